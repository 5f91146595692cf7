#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbatlas/cartan.hpp"
#include "bbatlas/coxeter.hpp"
#include "bbatlas/poset.hpp"
#include "bbatlas/reflection_order.hpp"
#include "bbatlas/report.hpp"
#include "bbatlas/twisted_order.hpp"

namespace bbatlas {

/// (v, w) with w in W^K and v <= w.
struct QKElement {
  GroupElement v;
  GroupElement w;
  friend bool operator==(const QKElement&, const QKElement&) = default;
};

/// The base group W with K, one glued group (tilde or breve), the twisted
/// order on the glued group with respect to the flat copy, and the word
/// embeddings of W into the flat and sharp copies.
class AtlasContext {
public:
  /// Breve gluing requires W_K finite and throws NotFiniteError otherwise.
  AtlasContext(const GeneralizedCartanMatrix& a, NodeSet k, GluingMode mode = GluingMode::Tilde,
               std::size_t ball_cap = kDefaultBallCap);

  [[nodiscard]] const CoxeterGroup& base() const { return base_k_.group(); }
  [[nodiscard]] NodeSet K() const { return k_; }
  [[nodiscard]] GluingMode mode() const { return diagram_.mode; }
  [[nodiscard]] const GluedDiagram& diagram() const { return diagram_; }
  [[nodiscard]] const CoxeterGroup& glued() const { return twisted_.group(); }
  [[nodiscard]] const TwistedContext& twisted() const { return twisted_; }
  [[nodiscard]] NodeSet flat_nodes() const { return diagram_.flat_nodes(); }
  [[nodiscard]] NodeSet sharp_nodes() const { return diagram_.sharp_nodes(); }
  [[nodiscard]] std::size_t ball_cap() const { return cap_; }

  [[nodiscard]] GroupElement flat(const GroupElement& w) const;
  [[nodiscard]] GroupElement sharp(const GroupElement& w) const;
  /// Longest element of W_K (computed on demand; throws NotFiniteError).
  [[nodiscard]] const GroupElement& w_K() const;

  /// Q_K restricted to l(w) <= L, ordered by w then v (canonical orders).
  [[nodiscard]] std::vector<QKElement> enumerate(int max_length) const;
  [[nodiscard]] std::vector<QKElement> minimal_elements(int max_length) const;
  /// (v', w') <= (v, w): some u in W_K with l(u) <= l(w) - l(w') and v <= v'u <= w'u <= w.
  [[nodiscard]] bool leq(const QKElement& lower, const QKElement& upper) const;
  [[nodiscard]] std::optional<GroupElement> leq_witness(const QKElement& lower, const QKElement& upper) const;

  /// v^flat (w^{-1})^sharp in the glued group (tilde gluing).
  [[nodiscard]] GroupElement nu_tilde(const QKElement& p) const;
  /// (w w_K)^flat (v^{-1})^sharp in the glued group (breve gluing).
  [[nodiscard]] GroupElement nu_breve(const QKElement& p) const;
  /// The map matching the gluing mode.
  [[nodiscard]] GroupElement nu(const QKElement& p) const;
  /// Membership of c in W~_{I flat} W~_{I sharp}.
  [[nodiscard]] bool in_flat_sharp_product(const GroupElement& c) const;
  /// The unique p with nu_tilde(p) = c, if any.
  [[nodiscard]] std::optional<QKElement> nu_tilde_preimage(const GroupElement& c) const;

  /// l(w) - l(v), the twisted length of nu_tilde(v, w).
  [[nodiscard]] static int rank(const QKElement& p) { return p.w.length() - p.v.length(); }
  [[nodiscard]] std::string name(const QKElement& p) const;
  [[nodiscard]] nlohmann::json to_json(const QKElement& p) const;

private:
  [[nodiscard]] GroupElement pull(const GroupElement& x, const std::vector<std::optional<int>>& natural) const;

  NodeSet k_;
  std::size_t cap_;
  TwistedContext base_k_;  // (W, K): houses the W_K ball cache
  GluedDiagram diagram_;
  TwistedContext twisted_;  // (glued group, flat nodes)
  mutable std::optional<GroupElement> w_k_;
};

/// Q-hat_K on a window: Q_K (l(w) <= L) ordered by the atlas order, plus a
/// bottom element, with reflection edge labels under a validated order in
/// which the reflections of the flat parabolic form a final section.
///
/// A cover p < q of images is labelled by nu(p)^{-1} nu(q) by default; the
/// left-hand product nu(q) nu(p)^{-1} is available for comparison.
struct AtlasPoset {
  std::vector<QKElement> elements;  // poset index i < elements.size(); the bottom is last
  FinitePoset poset;
  EdgeLabeling labels;
  ReflectionOrderSpec order;
  std::size_t bottom = 0;
  std::vector<std::size_t> minimal;
  LabelSide side = LabelSide::Right;
  NodeSet final_support;
};

/// Which parabolic's reflections form the final section of the label order.
enum class FinalSection { Flat, Sharp };

AtlasPoset build_atlas_poset(const AtlasContext& ctx, int max_length, std::uint64_t seed = kDefaultSeed,
                             LabelSide side = LabelSide::Right, FinalSection final = FinalSection::Sharp);

Report verify_embeddings(const AtlasContext& ctx, int max_length);
Report verify_qk_order(const AtlasContext& ctx, int max_length);
Report verify_iso_tilde(const AtlasContext& ctx, int max_length);
Report verify_image_tilde(const AtlasContext& ctx, int max_length);
Report verify_convexity_tilde(const AtlasContext& ctx, int max_length);
/// Passes when the comparison of Q_K with the breve image is uniformly
/// order-preserving or uniformly order-reversing; details["direction"]
/// records which ("reversing", "preserving", "both", or "neither").
Report verify_iso_breve(const AtlasContext& ctx, int max_length);

Report verify_thin(const AtlasPoset& p);
Report verify_graded(const AtlasPoset& p);
Report verify_el(const AtlasPoset& p, const AtlasContext& ctx, ChainReading reading = ChainReading::TopDown,
                 std::size_t chain_cap = kDefaultChainCap);
/// Lexicographically least chains from each element down to the bottom:
/// they should avoid labels from the final section and end (r, r) > bottom
/// with r = min(v W_K). Reported, never a hard failure.
Report scan_bottom_chains(const AtlasPoset& p, const AtlasContext& ctx, ChainReading reading = ChainReading::TopDown,
                          std::size_t chain_cap = kDefaultChainCap);

}  // namespace bbatlas
