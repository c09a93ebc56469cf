#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "disctc/integer_matrix.hpp"
#include "disctc/poly.hpp"

namespace disctc {

/// Scalar action of the torus T^s on C^m: theta . z multiplies z_j by
/// prod_r theta_r^{xi[r][j]}.
class TorusAction {
public:
  /// Builds an action whose rows were checked by other means (for example a
  /// numerical scaling identity). Use validate_action for polynomial input.
  static TorusAction assume_valid(std::size_t dim, IntMatrix xi, IntVector row_degrees);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t s() const noexcept { return xi_.size(); }
  const IntMatrix& xi() const noexcept { return xi_; }
  const IntVector& row_degrees() const noexcept { return row_degrees_; }

  /// Weight prod_r theta_r^{xi[r][j]} for every coordinate j.
  std::vector<Complex> weights(std::span<const Complex> theta) const;
  std::vector<Complex> act(std::span<const Complex> theta, std::span<const Complex> z) const;

private:
  TorusAction(std::size_t dim, IntMatrix xi, IntVector row_degrees);

  std::size_t dim_;
  IntMatrix xi_;
  IntVector row_degrees_;
};

/// Checks that every row of xi is a homogeneisation of delta. The error
/// message names the first failing row (1-based).
TorusAction validate_action(const SparsePoly& delta, const IntMatrix& xi);

/// A set of coordinates forced to vanish. `achievable` records whether the
/// corresponding stratum of V is nonempty.
struct ZeroPattern {
  std::vector<bool> zeroed;
  bool achievable = false;
};

/// Exact test: the restriction of delta to {z_j = 0, j in S} is not the zero
/// polynomial.
ZeroPattern make_zero_pattern(const SparsePoly& delta, std::vector<bool> zeroed);

/// Dimension of the common stabiliser of the points with zero set exactly S:
/// s - rank_Q of xi restricted to the columns outside S.
int stabiliser_dim(const TorusAction& action, const ZeroPattern& pattern);

using AchievabilityTest = std::function<bool(const std::vector<bool>&)>;

struct StabiliserMax {
  int t = 0;
  std::vector<bool> witness;
  std::size_t patterns_checked = 0;
  std::size_t patterns_achievable = 0;
};

inline constexpr std::size_t kMaxPatternDim = 20;

/// Maximum stabiliser dimension over all achievable zero patterns, enumerated
/// over the 2^m subsets with pruning (supersets of unachievable patterns are
/// unachievable). Throws ValidationError if m exceeds kMaxPatternDim.
StabiliserMax max_stabiliser_dim(const SparsePoly& delta, const TorusAction& action);
StabiliserMax max_stabiliser_dim(const TorusAction& action, const AchievabilityTest& achievable);
/// Variant over caller-supplied patterns, for dimensions above the cap.
StabiliserMax max_stabiliser_dim(const TorusAction& action,
                                 const std::vector<ZeroPattern>& patterns);

struct BoundReport {
  std::size_t m = 0;
  std::size_t s = 0;
  int t = 0;
  std::int64_t bound = 0;
  std::vector<bool> witness;
  /// Rank of Homog(delta), when a symbolic polynomial was available.
  std::optional<std::size_t> lattice_rank;
};

/// The upper bound 2m - s + t on the equivariant topological complexity.
BoundReport tc_upper_bound(const SparsePoly& delta, const TorusAction& action);
BoundReport tc_upper_bound(const TorusAction& action, const AchievabilityTest& achievable);

/// 0-based indices of the set entries of a pattern mask.
std::vector<std::size_t> pattern_indices(const std::vector<bool>& zeroed);

}  // namespace disctc
