#pragma once

#include <algorithm>
#include <vector>

#include "stein/prefix_exchange.hpp"
#include "stein/words.hpp"

namespace stein {

/// Φ on the unit space: binary expansion, then τ, then the β-adic value.
/// The side of the cut point is kept (tail 0^∞ stays plus, 1^∞ becomes (10)^∞, minus).
inline CutPoint embed_cut_point(const CutPoint& x) {
  EventuallyPeriodicWord w = substitute_tau(n_adic_expand(x, 2));
  return CutPoint{beta_word_value(w), x.side};
}

/// Image of an element of V_{2,1} in V(Z+Zβ, ⟨β⟩, 1): each dyadic cylinder
/// pair (u, v) becomes the affine map ψ(C(τ(u))) -> ψ(C(τ(v))).
inline PLMap embed_v2_element(const PLMap& f) {
  if (higman_thompson_base(*f.context()) != 2) fail(Errc::WrongContext, "embedding needs an element of V_{2,1}");
  const ContextPtr& target = golden_context();
  const Field& F = target->field();
  const FieldElement beta = F.generator();
  std::vector<Piece> pieces;
  for (const auto& [u, v] : to_pairs(f).pairs) {
    Word tu = substitute_tau(u), tv = substitute_tau(v);
    FieldElement left_u = beta_word_value(tu), left_v = beta_word_value(tv);
    FieldElement slope = beta.pow(beta_cylinder_exponent(tu) - beta_cylinder_exponent(tv));
    pieces.push_back(Piece{left_u, slope, left_v - slope * left_u});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
  return PLMap::make(target, std::move(pieces));
}

}  // namespace stein
