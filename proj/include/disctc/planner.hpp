#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disctc/config_space.hpp"
#include "disctc/error.hpp"
#include "disctc/flow.hpp"
#include "disctc/morse.hpp"

namespace disctc {

/// Potentials on centred configurations, in root coordinates.
///   g:      sum_{i>=2} |a_i(w)|^2 + 1/|disc(w)|^2, the coefficient-space
///           potential pulled back along the roots-to-coefficients map;
///   gprime: sum |w_i|^2 + sum_{i<j} 1/|w_i - w_j|.
enum class PotentialKind { g, gprime };

std::string to_string(PotentialKind kind);
PotentialKind potential_from_string(const std::string& name);

double config_potential(PotentialKind kind, std::span<const Complex> w);
/// Gradient in complex form (d/dx_k + i d/dy_k), projected onto the
/// centred subspace sum_k v_k = 0.
std::vector<Complex> config_gradient(PotentialKind kind, std::span<const Complex> w);
double config_gradient_norm(PotentialKind kind, std::span<const Complex> w);

double potential_gprime(const PlanarConfig& c);
std::vector<Complex> grad_gprime(const PlanarConfig& c);

/// Hessian on the real 2(n-1)-dimensional centred subspace by central
/// differences of the exact gradient, reduced to its inertia.
Inertia config_hessian_inertia(PotentialKind kind, std::span<const Complex> w,
                               double step = 1e-5, double null_tol = 1e-6);

struct CatalogEntry {
  PlanarConfig config;
  /// Morse index (negative count) on the centred subspace.
  int index = 0;
  Inertia inertia;
  double value = 0.0;
  double grad_norm = 0.0;
  std::string shape_hash;
};

/// Straight-line recipe from entries[from].config to a rotated copy of
/// entries[to].config, labelled consistently with entries[from].config.
struct ConnectingRecipe {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<PlanarConfig> waypoints;
};

struct CriticalCatalog {
  std::size_t n = 0;
  PotentialKind potential = PotentialKind::g;
  double grad_tol = 0.0;
  std::vector<CatalogEntry> entries;
  std::vector<ConnectingRecipe> recipes;

  const ConnectingRecipe* recipe(std::size_t from, std::size_t to) const;
};

inline constexpr std::size_t kMaxCatalogPoints = 4;

struct CatalogOptions {
  PotentialKind potential = PotentialKind::g;
  std::uint64_t seed = 0;
  double grad_tol = 1e-9;
  /// Entries closer than this up to rotation and relabelling are merged.
  double dedup_tol = 1e-6;
  std::size_t max_steps = 200000;
  /// Largest point displacement between recipe waypoints.
  double max_displacement = 0.05;
};

/// Multi-start search for critical configurations. Seeds cycle through
/// generic, collinear, conjugation-symmetric and rotationally symmetric starts;
/// symmetric starts descend inside their symmetric subspace, which reaches
/// saddles of the full potential. Completeness is not claimed.
CriticalCatalog build_catalog(std::size_t n, std::size_t seeds, const CatalogOptions& options = {});

/// Rotation- and relabelling-invariant hash of a configuration.
std::string shape_hash(const PlanarConfig& c);

struct PathLeg {
  std::string name;
  std::size_t begin = 0;  // first sample index
  std::size_t end = 0;    // last sample index (inclusive)
};

struct PathPolyline {
  std::vector<PlanarConfig> samples;
  double min_margin = 0.0;
  std::vector<PathLeg> legs;
  /// Catalog entries matched by the flow terminals, when step (3) ran.
  std::optional<std::size_t> entry_p;
  std::optional<std::size_t> entry_p_prime;
  /// Number of assignments tied with the chosen one in the step (3) match.
  std::size_t tied_matches = 0;
  std::size_t flow_steps = 0;

  const PathLeg* leg(const std::string& name) const;
};

struct PlanOptions {
  PotentialKind potential = PotentialKind::g;
  FlowOptions flow{};
  std::size_t catalog_seeds = 48;
  std::uint64_t catalog_seed = 0;
  /// A flow terminal matches a catalog entry within this shape distance.
  double match_tol = 1e-5;
  /// Continuity bound: largest point displacement between consecutive samples.
  double max_displacement = 0.05;
};

/// Catalog reused across plan() calls with the same (n, options).
const CriticalCatalog& cached_catalog(std::size_t n, const PlanOptions& options);

/// Three-step plan from p to p': barycentre retraction, descending flow of
/// the pair potential to (q, q'), then a connecting leg on the critical set
/// (rotation along the orbit, or a catalog recipe followed by a rotation). The
/// p'-side legs are reversed and relabelled so the path runs p -> p'.
/// Throws NumericError on flow non-convergence, ValidationError("catalog
/// unavailable") for n > kMaxCatalogPoints and CatalogMiss when a terminal
/// matches no entry.
PathPolyline plan(const PlanarConfig& p, const PlanarConfig& p_prime, const PlanOptions& options = {});

/// As plan(), with an explicit catalog.
PathPolyline plan(const PlanarConfig& p, const PlanarConfig& p_prime, const PlanOptions& options,
                  const CriticalCatalog& catalog);

struct CatalogMiss : NumericError {
  explicit CatalogMiss(const std::string& what) : NumericError(what) {}
};

struct PathAudit {
  double min_margin = 0.0;
  double max_displacement = 0.0;
};

/// Re-samples every segment at `density` times the stored resolution and
/// re-checks pairwise distances.
PathAudit audit_path(const PathPolyline& path, std::size_t density = 10);

/// Static SVG with one trail per point.
std::string render_svg(const PathPolyline& path);

}  // namespace disctc
