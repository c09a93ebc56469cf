#include "disctc/torus.hpp"

#include <string>

#include "disctc/error.hpp"
#include "disctc/lattice.hpp"

namespace disctc {

TorusAction::TorusAction(std::size_t dim, IntMatrix xi, IntVector row_degrees)
    : dim_(dim), xi_(std::move(xi)), row_degrees_(std::move(row_degrees)) {}

TorusAction TorusAction::assume_valid(std::size_t dim, IntMatrix xi, IntVector row_degrees) {
  if (xi.size() != row_degrees.size()) {
    throw ValidationError("one degree per action row is required");
  }
  for (std::size_t r = 0; r < xi.size(); ++r) {
    if (xi[r].size() != dim) {
      throw ValidationError("action row " + std::to_string(r + 1) + " has " +
                            std::to_string(xi[r].size()) + " columns, expected " +
                            std::to_string(dim));
    }
  }
  return TorusAction(dim, std::move(xi), std::move(row_degrees));
}

std::vector<Complex> TorusAction::weights(std::span<const Complex> theta) const {
  if (theta.size() != s()) throw ValidationError("torus element has wrong dimension");
  std::vector<Complex> w(dim_, Complex{1.0, 0.0});
  for (std::size_t r = 0; r < s(); ++r) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const auto e = xi_[r][j];
      if (e == 0) continue;
      // unit-modulus input: negative powers are conjugates
      const Complex base = e > 0 ? theta[r] : Complex{1.0, 0.0} / theta[r];
      Complex p{1.0, 0.0};
      for (std::int64_t k = 0; k < (e > 0 ? e : -e); ++k) p *= base;
      w[j] *= p;
    }
  }
  return w;
}

std::vector<Complex> TorusAction::act(std::span<const Complex> theta,
                                      std::span<const Complex> z) const {
  if (z.size() != dim_) throw ValidationError("point has wrong dimension for action");
  auto w = weights(theta);
  for (std::size_t j = 0; j < dim_; ++j) w[j] *= z[j];
  return w;
}

TorusAction validate_action(const SparsePoly& delta, const IntMatrix& xi) {
  IntVector degrees;
  for (std::size_t r = 0; r < xi.size(); ++r) {
    if (xi[r].size() != delta.dim()) {
      throw ValidationError("action row " + std::to_string(r + 1) + " has " +
                            std::to_string(xi[r].size()) + " columns, expected " +
                            std::to_string(delta.dim()));
    }
    const auto deg = is_homogeneisation(delta, xi[r]);
    if (!deg) {
      throw ValidationError("action row " + std::to_string(r + 1) +
                            " is not a homogeneisation of the polynomial");
    }
    degrees.push_back(*deg);
  }
  return TorusAction::assume_valid(delta.dim(), xi, std::move(degrees));
}

ZeroPattern make_zero_pattern(const SparsePoly& delta, std::vector<bool> zeroed) {
  ZeroPattern p;
  p.achievable = !delta.restrict_to_zero(zeroed).is_zero();
  p.zeroed = std::move(zeroed);
  return p;
}

int stabiliser_dim(const TorusAction& action, const ZeroPattern& pattern) {
  if (pattern.zeroed.size() != action.dim()) {
    throw ValidationError("zero pattern length does not match action dimension");
  }
  if (!pattern.achievable) {
    throw ValidationError("stabiliser dimension requested for an unachievable zero pattern");
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < action.dim(); ++j) {
    if (!pattern.zeroed[j]) free_cols.push_back(j);
  }
  IntMatrix sub(action.s(), IntVector(free_cols.size()));
  for (std::size_t r = 0; r < action.s(); ++r) {
    for (std::size_t k = 0; k < free_cols.size(); ++k) sub[r][k] = action.xi()[r][free_cols[k]];
  }
  return static_cast<int>(action.s()) - static_cast<int>(rank_q(sub, free_cols.size()));
}

namespace {

std::vector<bool> mask_to_pattern(std::uint32_t mask, std::size_t m) {
  std::vector<bool> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = (mask >> j) & 1u;
  return out;
}

void consider(StabiliserMax& best, const TorusAction& action, const ZeroPattern& p) {
  ++best.patterns_checked;
  if (!p.achievable) return;
  ++best.patterns_achievable;
  const int d = stabiliser_dim(action, p);
  if (best.witness.empty() || d > best.t) {
    best.t = d;
    best.witness = p.zeroed;
  }
}

}  // namespace

StabiliserMax max_stabiliser_dim(const TorusAction& action, const AchievabilityTest& achievable) {
  const std::size_t m = action.dim();
  if (m > kMaxPatternDim) {
    throw ValidationError("pattern enumeration is capped at m = " +
                          std::to_string(kMaxPatternDim) + "; supply patterns explicitly");
  }
  const std::uint32_t count = 1u << m;
  // 0 = unknown, 1 = achievable, 2 = unachievable
  std::vector<std::uint8_t> state(count, 0);
  StabiliserMax best;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    bool pruned = false;
    for (std::size_t j = 0; j < m && !pruned; ++j) {
      const std::uint32_t bit = 1u << j;
      if ((mask & bit) && state[mask & ~bit] == 2) pruned = true;
    }
    ZeroPattern p;
    p.zeroed = mask_to_pattern(mask, m);
    p.achievable = !pruned && achievable(p.zeroed);
    state[mask] = p.achievable ? 1 : 2;
    consider(best, action, p);
  }
  if (best.witness.empty()) {
    throw ValidationError("no achievable zero pattern: the variety is empty");
  }
  return best;
}

StabiliserMax max_stabiliser_dim(const SparsePoly& delta, const TorusAction& action) {
  if (delta.dim() != action.dim()) throw ValidationError("action and polynomial dimensions differ");
  return max_stabiliser_dim(action, [&delta](const std::vector<bool>& zeroed) {
    return !delta.restrict_to_zero(zeroed).is_zero();
  });
}

StabiliserMax max_stabiliser_dim(const TorusAction& action,
                                 const std::vector<ZeroPattern>& patterns) {
  StabiliserMax best;
  for (const auto& p : patterns) consider(best, action, p);
  if (best.witness.empty()) throw ValidationError("no achievable pattern among those supplied");
  return best;
}

BoundReport tc_upper_bound(const TorusAction& action, const AchievabilityTest& achievable) {
  const auto best = max_stabiliser_dim(action, achievable);
  BoundReport r;
  r.m = action.dim();
  r.s = action.s();
  r.t = best.t;
  r.bound = 2 * static_cast<std::int64_t>(r.m) - static_cast<std::int64_t>(r.s) + r.t;
  r.witness = best.witness;
  return r;
}

BoundReport tc_upper_bound(const SparsePoly& delta, const TorusAction& action) {
  if (delta.dim() != action.dim()) throw ValidationError("action and polynomial dimensions differ");
  auto r = tc_upper_bound(action, [&delta](const std::vector<bool>& zeroed) {
    return !delta.restrict_to_zero(zeroed).is_zero();
  });
  r.lattice_rank = homog_lattice(delta).rank();
  return r;
}

std::vector<std::size_t> pattern_indices(const std::vector<bool>& zeroed) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < zeroed.size(); ++j) {
    if (zeroed[j]) out.push_back(j);
  }
  return out;
}

}  // namespace disctc
