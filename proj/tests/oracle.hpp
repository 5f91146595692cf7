#pragma once

// Independent reference computations for the test suite. Nothing here calls
// into the library's arithmetic: elements are plain integer matrices built
// from the Cartan matrix, multiplied with a textbook triple loop, and the
// Cayley graph is explored by breadth-first search over words.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "bbatlas/coxeter.hpp"

namespace oracle {

using Mat = std::vector<std::vector<long long>>;  // m[row][col]; column c = image of alpha_c

inline Mat identity(int n) {
  Mat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// s_j(alpha_i) = alpha_i - a_ij alpha_j.
inline Mat generator(const bbatlas::GeneralizedCartanMatrix& a, int j) {
  Mat m = identity(a.rank());
  for (int i = 0; i < a.rank(); ++i) m[j][i] -= a(i, j);
  return m;
}

inline Mat mul(const Mat& x, const Mat& y) {
  const std::size_t n = x.size();
  Mat z(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
  return z;
}

inline Mat of_word(const bbatlas::GeneralizedCartanMatrix& a, const std::vector<int>& word) {
  Mat m = identity(a.rank());
  for (int s : word) m = mul(m, generator(a, s));
  return m;
}

inline Mat to_mat(const bbatlas::GroupElement& w) {
  Mat m(w.rank(), std::vector<long long>(w.rank(), 0));
  for (int r = 0; r < w.rank(); ++r)
    for (int c = 0; c < w.rank(); ++c) m[r][c] = w.entry(r, c);
  return m;
}

/// Every element of length <= L with one shortest word (BFS distance = length).
struct CayleyBall {
  std::map<Mat, std::vector<int>> word;

  CayleyBall(const bbatlas::GeneralizedCartanMatrix& a, int max_length) {
    const int n = a.rank();
    std::vector<Mat> gens;
    for (int j = 0; j < n; ++j) gens.push_back(generator(a, j));
    std::vector<Mat> frontier{identity(n)};
    word[identity(n)] = {};
    for (int len = 0; len < max_length; ++len) {
      std::vector<Mat> next;
      for (const Mat& m : frontier)
        for (int j = 0; j < n; ++j) {
          Mat z = mul(m, gens[j]);
          if (word.count(z)) continue;
          auto w = word[m];
          w.push_back(j);
          word.emplace(z, std::move(w));
          next.push_back(std::move(z));
        }
      frontier = std::move(next);
    }
  }

  [[nodiscard]] int length(const Mat& m) const { return static_cast<int>(word.at(m).size()); }
};

/// Subword property: v <= w iff v is the product of a subword of a reduced word of w.
inline bool subword_leq(const bbatlas::GeneralizedCartanMatrix& a, const Mat& v, const std::vector<int>& reduced_w) {
  const std::size_t k = reduced_w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) sub.push_back(reduced_w[i]);
    if (of_word(a, sub) == v) return true;
  }
  return false;
}

/// All products of subwords: the Bruhat interval [e, w].
inline std::set<Mat> subword_products(const bbatlas::GeneralizedCartanMatrix& a, const std::vector<int>& reduced_w) {
  std::set<Mat> out;
  const std::size_t k = reduced_w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) sub.push_back(reduced_w[i]);
    out.insert(of_word(a, sub));
  }
  return out;
}

inline Mat inverse_of_word(const bbatlas::GeneralizedCartanMatrix& a, std::vector<int> word) {
  std::reverse(word.begin(), word.end());
  return of_word(a, word);
}

inline std::vector<long long> act(const Mat& m, const std::vector<long long>& v) {
  std::vector<long long> out(v.size(), 0);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

inline bool negative(const std::vector<long long>& v) {
  bool any = false;
  for (long long x : v) {
    if (x > 0) return false;
    any = any || x < 0;
  }
  return any;
}

/// The J-twisted order on ball(L), straight from its generating relations
/// s_beta w < w for beta in Psi_J with w^{-1}(beta) < 0, transitively closed
/// inside the ball. Indexed by matrices.
struct TwistedClosure {
  std::vector<Mat> elements;
  std::map<Mat, std::size_t> index;
  std::vector<std::vector<char>> leq;

  TwistedClosure(const bbatlas::GeneralizedCartanMatrix& a, bbatlas::NodeSet j, int max_length) {
    const CayleyBall ball(a, max_length);
    for (const auto& [m, w] : ball.word) {
      index[m] = elements.size();
      elements.push_back(m);
    }
    const std::size_t n = elements.size();
    leq.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = 1;

    // Reflections m s_i m^{-1} with positive root, one per root.
    std::map<std::vector<long long>, Mat> reflections;
    for (const auto& [m, w] : ball.word)
      for (int i = 0; i < a.rank(); ++i) {
        std::vector<long long> root(a.rank());
        for (int r = 0; r < a.rank(); ++r) root[r] = m[r][i];
        if (negative(root))
          for (auto& x : root) x = -x;
        reflections.emplace(root, mul(mul(m, generator(a, i)), inverse_of_word(a, w)));
      }
    for (const auto& [root, t] : reflections) {
      bool inside_j = true;
      for (int r = 0; r < a.rank(); ++r) inside_j = inside_j && (root[r] == 0 || j.contains(r));
      std::vector<long long> beta = root;
      if (inside_j)
        for (auto& x : beta) x = -x;
      for (const auto& [m, w] : ball.word) {
        if (!negative(act(inverse_of_word(a, w), beta))) continue;
        auto it = index.find(mul(t, m));
        if (it != index.end()) leq[it->second][index.at(m)] = 1;
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t x = 0; x < n; ++x) {
        if (!leq[x][k]) continue;
        for (std::size_t y = 0; y < n; ++y)
          if (leq[k][y]) leq[x][y] = 1;
      }
  }

  [[nodiscard]] bool holds(const Mat& x, const Mat& y) const { return leq[index.at(x)][index.at(y)] != 0; }
};

}  // namespace oracle
