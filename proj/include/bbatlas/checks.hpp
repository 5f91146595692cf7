#pragma once

#include <cstddef>

#include "bbatlas/coxeter.hpp"
#include "bbatlas/report.hpp"

namespace bbatlas {

/// glue_tilde and glue_breve against the seven reference diagrams, up to
/// isomorphism preserving node kinds and bond orders (infinite bonds
/// included). Rows without a breve diagram must refuse the breve gluing.
Report verify_glue_table();

/// jleq against two independent characterizations of the J-twisted order:
///   - the generating-relation closure on the ball of radius `ball`,
///     compared on the sub-window of radius `sub_window`;
///   - when W_J is finite, a <=_J b iff w_J a <= w_J b in Bruhat order,
///     compared on the sub-window.
/// W_J counts as finite when its enumeration saturates within `cap`.
Report verify_twisted_oracles(const CoxeterGroup& g, NodeSet j, int ball, int sub_window,
                              std::size_t cap = kDefaultBallCap);

/// jlength = jlength_by_inversions on the ball, jlength = l for J empty and
/// jlength = -l for J = I when W is finite.
Report verify_twisted_length(const CoxeterGroup& g, NodeSet j, int ball, std::size_t cap = kDefaultBallCap);

}  // namespace bbatlas
