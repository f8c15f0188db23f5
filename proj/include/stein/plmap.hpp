#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "stein/context.hpp"

namespace stein {

/// f(t) = slope * t + offset on [start, next start).
struct Piece {
  FieldElement start;
  FieldElement slope;
  FieldElement offset;

  FieldElement apply(const FieldElement& t) const { return slope * t + offset; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

enum class Side { Minus, Plus };

/// A point t_- or t_+ of the Cantor model, t in Γ. t_- < t_+.
struct CutPoint {
  FieldElement value;
  Side side = Side::Plus;

  friend bool operator==(const CutPoint&, const CutPoint&) = default;
  friend std::strong_ordering operator<=>(const CutPoint& a, const CutPoint& b) {
    if (auto c = a.value <=> b.value; c != 0) return c;
    return static_cast<int>(a.side) <=> static_cast<int>(b.side);
  }

  std::string to_string() const { return "(" + value.to_string() + (side == Side::Plus ? ")+" : ")-"); }
};

inline CutPoint plus(FieldElement t) { return {std::move(t), Side::Plus}; }
inline CutPoint minus(FieldElement t) { return {std::move(t), Side::Minus}; }

/// An element of V(Γ, Λ, ℓ): a right-continuous piecewise-linear bijection of [0, ℓ),
/// kept in canonical form (adjacent pieces never share the same affine map).
class PLMap {
 public:
  /// Validates breakpoints, offsets, slopes and bijectivity, then canonicalizes.
  static PLMap make(ContextPtr ctx, std::vector<Piece> pieces) {
    const Context& c = *ctx;
    if (pieces.empty()) fail(Errc::UnorderedBreakpoints, "an element needs at least one piece");
    for (auto& p : pieces) {
      p.start = p.start.in(c.field());
      p.slope = p.slope.in(c.field());
      p.offset = p.offset.in(c.field());
    }
    if (!pieces.front().start.is_zero()) fail(Errc::UnorderedBreakpoints, "first breakpoint must be 0");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const FieldElement& end = i + 1 < pieces.size() ? pieces[i + 1].start : c.ell();
      if (!(pieces[i].start < end)) fail(Errc::UnorderedBreakpoints, "breakpoints must increase strictly from 0 to ell");
      if (!c.gamma().contains(pieces[i].start))
        fail(Errc::BreakpointNotInGamma, "breakpoint " + pieces[i].start.to_string() + " is not in Gamma");
      if (!c.gamma().contains(pieces[i].offset))
        fail(Errc::BreakpointNotInGamma, "offset " + pieces[i].offset.to_string() + " is not in Gamma");
      if (c.lambda().contains(pieces[i].slope, 4096) != true)
        fail(Errc::SlopeNotInLambda, "slope " + pieces[i].slope.to_string() + " is not in Lambda");
    }
    std::vector<std::pair<FieldElement, FieldElement>> images;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const FieldElement& end = i + 1 < pieces.size() ? pieces[i + 1].start : c.ell();
      images.emplace_back(pieces[i].apply(pieces[i].start), pieces[i].apply(end));
    }
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    FieldElement at = c.field().zero();
    for (const auto& [lo, hi] : images) {
      if (lo != at) fail(Errc::NotBijective, "image intervals overlap or leave a gap at " + at.to_string());
      at = hi;
    }
    if (at != c.ell()) fail(Errc::NotBijective, "images do not cover [0, ell)");
    return trusted(std::move(ctx), std::move(pieces));
  }

  /// Canonicalizes pieces already known to form a valid element.
  static PLMap trusted(ContextPtr ctx, std::vector<Piece> pieces) {
    std::vector<Piece> merged;
    for (auto& p : pieces) {
      if (!merged.empty() && merged.back().slope == p.slope && merged.back().offset == p.offset) continue;
      merged.push_back(std::move(p));
    }
    return PLMap(std::move(ctx), std::move(merged));
  }

  static PLMap identity(ContextPtr ctx) {
    const Field& f = ctx->field();
    return PLMap(ctx, {Piece{f.zero(), f.one(), f.zero()}});
  }

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  const FieldElement& end_of(std::size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].start : ctx_->ell();
  }

  bool is_identity() const {
    return pieces_.size() == 1 && pieces_[0].slope == FieldElement(1) && pieces_[0].offset.is_zero();
  }

  /// Index of the piece containing t, approached from the right (0 <= t < ℓ).
  std::size_t piece_right_of(const FieldElement& t) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](const FieldElement& x, const Piece& p) { return x < p.start; });
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
  }

  /// Index of the piece containing t, approached from the left (0 < t <= ℓ).
  std::size_t piece_left_of(const FieldElement& t) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const Piece& p, const FieldElement& x) { return p.start < x; });
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
  }

  /// f(t) for 0 <= t < ℓ.
  FieldElement operator()(const FieldElement& t) const { return pieces_[piece_right_of(t)].apply(t); }

  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.pieces_ == b.pieces_ && (a.ctx_ == b.ctx_ || a.ctx_->same_as(*b.ctx_));
  }

  std::string to_string() const {
    auto term = [](const FieldElement& x) {
      std::string t = x.to_string();
      return t.find_first_of("+-", 1) == std::string::npos ? t : "(" + t + ")";
    };
    std::string s;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& p = pieces_[i];
      s += "[" + p.start.to_string() + ", " + end_of(i).to_string() + ") -> " +
           (p.slope == FieldElement(1) ? "t" : term(p.slope) + "*t");
      if (p.offset.sign() != 0) s += p.offset.sign() < 0 ? " - " + term(-p.offset) : " + " + term(p.offset);
      s += "\n";
    }
    return s;
  }

 private:
  PLMap(ContextPtr ctx, std::vector<Piece> pieces) : ctx_(std::move(ctx)), pieces_(std::move(pieces)) {}

  ContextPtr ctx_;
  std::vector<Piece> pieces_;
};

inline void require_same_context(const PLMap& f, const PLMap& g) {
  if (f.context() != g.context() && !f.context()->same_as(*g.context()))
    fail(Errc::ContextMismatch, "elements belong to different groups");
}

/// f ∘ g.
inline PLMap compose(const PLMap& f, const PLMap& g) {
  require_same_context(f, g);
  std::vector<Piece> out;
  const auto& fp = f.pieces();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Piece& q = g.pieces()[i];
    FieldElement x = q.start;
    const FieldElement& b = g.end_of(i);
    FieldElement image_end = q.apply(b);
    std::size_t j = f.piece_right_of(q.apply(x));
    while (x < b) {
      const FieldElement& u = f.end_of(j);
      FieldElement seg_end = u < image_end ? (u - q.offset) / q.slope : b;
      out.push_back(Piece{x, fp[j].slope * q.slope, fp[j].slope * q.offset + fp[j].offset});
      x = seg_end;
      ++j;
    }
  }
  return PLMap::trusted(g.context(), std::move(out));
}

inline PLMap invert(const PLMap& f) {
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    FieldElement inv = p.slope.inverse();
    out.push_back(Piece{p.apply(p.start), inv, -(p.offset * inv)});
  }
  std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
  return PLMap::trusted(f.context(), std::move(out));
}

inline bool in_domain(const CutPoint& x, const FieldElement& ell) {
  if (x.value.sign() < 0 || x.value > ell) return false;
  if (x.value.is_zero() && x.side == Side::Minus) return false;
  if (x.value == ell && x.side == Side::Plus) return false;
  return true;
}

/// Local slope of f at a cut point: right piece for t_+, left piece for t_-.
inline const Piece& piece_at(const PLMap& f, const CutPoint& x) {
  return f.pieces()[x.side == Side::Plus ? f.piece_right_of(x.value) : f.piece_left_of(x.value)];
}

/// Action of f on the Cantor model [0_+, ℓ_-].
inline CutPoint act_on_cut(const PLMap& f, const CutPoint& x) {
  if (!in_domain(x, f.context()->ell())) fail(Errc::OutOfDomain, x.to_string() + " is outside [0+, ell-]");
  return CutPoint{piece_at(f, x).apply(x.value), x.side};
}

struct FixedCut {
  CutPoint point;
  FieldElement slope;
  bool attracting = false;
};

struct FixedPointReport {
  std::vector<FixedCut> cuts;                                           // fixed Γ-cut points
  std::vector<std::pair<FieldElement, FieldElement>> fixed_intervals;  // pieces where f is the identity
  std::vector<FieldElement> non_gamma_points;                           // fixed points outside Γ
};

/// Fixed points of f. A fixed cut point is attracting iff its local slope is < 1.
inline FixedPointReport fixed_point_report(const PLMap& f) {
  FixedPointReport r;
  const GammaModule& gamma = f.context()->gamma();
  const FieldElement one(1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    const FieldElement& a = p.start;
    const FieldElement& b = f.end_of(i);
    if (p.slope == one) {
      if (p.offset.is_zero()) r.fixed_intervals.emplace_back(a, b);
      continue;
    }
    FieldElement t = p.offset / (one - p.slope);
    if (t < a || t > b) continue;
    if (!gamma.contains(t)) {
      r.non_gamma_points.push_back(t);
      continue;
    }
    bool attracting = p.slope < one;
    if (a < t) r.cuts.push_back({minus(t), p.slope, attracting});
    if (t < b) r.cuts.push_back({plus(t), p.slope, attracting});
  }
  std::sort(r.cuts.begin(), r.cuts.end(), [](const FixedCut& x, const FixedCut& y) { return x.point < y.point; });
  return r;
}

}  // namespace stein
