#include "disctc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "disctc/parallel.hpp"
#include "disctc/random.hpp"

namespace disctc {

using Points = std::vector<Complex>;

std::string to_string(PotentialKind kind) { return kind == PotentialKind::g ? "g" : "gprime"; }

PotentialKind potential_from_string(const std::string& name) {
  if (name == "g") return PotentialKind::g;
  if (name == "gprime") return PotentialKind::gprime;
  throw ValidationError("unknown potential '" + name + "' (expected g or gprime)");
}

namespace {

// Elementary symmetric functions e_0..e_k of the given points.
std::vector<Complex> elementary(std::span<const Complex> w) {
  std::vector<Complex> e(w.size() + 1, Complex{0.0, 0.0});
  e[0] = 1.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = k + 1; i >= 1; --i) e[i] += w[k] * e[i - 1];
  }
  return e;
}

// |disc| = prod_{i<j} |w_i - w_j|^2
double abs_disc(std::span<const Complex> w) {
  double prod = 1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) prod *= std::norm(w[i] - w[j]);
  }
  return prod;
}

void require_distinct(std::span<const Complex> w) {
  if (!(min_pairwise_distance(w) > 0.0)) throw ValidationError("coincident points in configuration");
}

Eigen::VectorXd to_real(std::span<const Complex> w) {
  Eigen::VectorXd x(2 * static_cast<Eigen::Index>(w.size()));
  for (std::size_t k = 0; k < w.size(); ++k) {
    x[2 * k] = w[k].real();
    x[2 * k + 1] = w[k].imag();
  }
  return x;
}

Points to_points(const Eigen::Ref<const Eigen::VectorXd>& x) {
  Points w(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = {x[2 * k], x[2 * k + 1]};
  return w;
}

double max_displacement(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Smallest |u + t (v - u)| over t in [0, 1].
double segment_min_abs(Complex u, Complex v) {
  const Complex w = v - u;
  const double ww = std::norm(w);
  double t = ww > 0.0 ? -(std::conj(w) * u).real() / ww : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(u + t * w);
}

double segment_margin(std::span<const Complex> a, std::span<const Complex> b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      best = std::min(best, segment_min_abs(a[i] - a[j], b[i] - b[j]));
    }
  }
  return best;
}

}  // namespace

double config_potential(PotentialKind kind, std::span<const Complex> w) {
  require_distinct(w);
  if (kind == PotentialKind::g) {
    const auto e = elementary(w);
    double v = 0.0;
    for (std::size_t i = 2; i < e.size(); ++i) v += std::norm(e[i]);
    const double d = abs_disc(w);
    return v + 1.0 / (d * d);
  }
  double v = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v += std::norm(w[i]);
    for (std::size_t j = i + 1; j < w.size(); ++j) v += 1.0 / std::abs(w[i] - w[j]);
  }
  return v;
}

std::vector<Complex> config_gradient(PotentialKind kind, std::span<const Complex> w) {
  require_distinct(w);
  const std::size_t n = w.size();
  Points grad(n, Complex{0.0, 0.0});
  if (kind == PotentialKind::g) {
    const auto e = elementary(w);
    const double d = abs_disc(w);
    const double eta2 = 1.0 / (d * d);
    Points others;
    others.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      others.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) others.push_back(w[j]);
      }
      // d e_i / d w_k = e_{i-1}(w without w_k)
      const auto ek = elementary(others);
      Complex log_deriv{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) log_deriv += 2.0 / (w[k] - w[j]);
      }
      for (std::size_t i = 2; i <= n; ++i) grad[k] += 2.0 * e[i] * std::conj(ek[i - 1]);
      grad[k] -= 2.0 * eta2 * std::conj(log_deriv);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = 2.0 * w[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const Complex diff = w[k] - w[j];
        const double r = std::abs(diff);
        grad[k] -= diff / (r * r * r);
      }
    }
  }
  Complex mean{0.0, 0.0};
  for (const auto& gk : grad) mean += gk;
  mean /= static_cast<double>(n);
  for (auto& gk : grad) gk -= mean;
  return grad;
}

double config_gradient_norm(PotentialKind kind, std::span<const Complex> w) {
  double s = 0.0;
  for (const auto& gk : config_gradient(kind, w)) s += std::norm(gk);
  return std::sqrt(s);
}

double potential_gprime(const PlanarConfig& c) {
  if (!c.is_centred()) throw ValidationError("g' is defined on centred configurations");
  return config_potential(PotentialKind::gprime, c.points());
}

std::vector<Complex> grad_gprime(const PlanarConfig& c) {
  if (!c.is_centred()) throw ValidationError("g' is defined on centred configurations");
  return config_gradient(PotentialKind::gprime, c.points());
}

Inertia config_hessian_inertia(PotentialKind kind, std::span<const Complex> w, double step,
                               double null_tol) {
  const std::size_t n = w.size();
  // orthonormal real basis of the centred subspace of C^n
  std::vector<Points> basis;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (Complex dir : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
      Points v(n, Complex{0.0, 0.0});
      v[k] = dir;
      v[n - 1] = -dir;
      for (const auto& b : basis) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += (std::conj(b[i]) * v[i]).real();
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * b[i];
      }
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h(dim, dim);
  Points plus(n), minus(n);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      plus[i] = w[i] + step * basis[b][i];
      minus[i] = w[i] - step * basis[b][i];
    }
    const auto gp = config_gradient(kind, plus);
    const auto gm = config_gradient(kind, minus);
    for (Eigen::Index a = 0; a < dim; ++a) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (std::conj(basis[a][i]) * (gp[i] - gm[i])).real();
      h(a, b) = s / (2.0 * step);
    }
  }
  return inertia(h, null_tol);
}

std::string shape_hash(const PlanarConfig& c) {
  std::vector<long long> key;
  auto quant = [](double x) { return std::llround(x * 1e5); };
  std::vector<double> radii, dists;
  for (const auto& w : c.points()) radii.push_back(std::abs(w - c.barycentre()));
  for (std::size_t i = 0; i < c.n(); ++i) {
    for (std::size_t j = i + 1; j < c.n(); ++j) dists.push_back(std::abs(c.points()[i] - c.points()[j]));
  }
  std::sort(radii.begin(), radii.end());
  std::sort(dists.begin(), dists.end());
  for (double r : radii) key.push_back(quant(r));
  for (double d : dists) key.push_back(quant(d));
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (long long v : key) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const ConnectingRecipe* CriticalCatalog::recipe(std::size_t from, std::size_t to) const {
  for (const auto& r : recipes) {
    if (r.from == from && r.to == to) return &r;
  }
  return nullptr;
}

namespace {

// Real-linear isometry T(w)_{sigma[k]} = zeta * (conj ? conj(w_k) : w_k) of
// finite order; configurations fixed by T form an invariant subspace.
struct Symmetry {
  std::vector<std::size_t> sigma;
  Complex zeta{1.0, 0.0};
  bool conj = false;
  std::size_t order = 1;

  Points apply(std::span<const Complex> w) const {
    Points out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) out[sigma[k]] = zeta * (conj ? std::conj(w[k]) : w[k]);
    return out;
  }

  // Average over the cyclic group generated by T.
  Points project(std::span<const Complex> w) const {
    Points acc(w.begin(), w.end());
    Points cur(w.begin(), w.end());
    for (std::size_t j = 1; j < order; ++j) {
      cur = apply(cur);
      for (std::size_t k = 0; k < w.size(); ++k) acc[k] += cur[k];
    }
    for (auto& x : acc) x /= static_cast<double>(order);
    return acc;
  }
};

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<std::optional<Symmetry>> seed_families(std::size_t n) {
  std::vector<std::optional<Symmetry>> out;
  out.push_back(std::nullopt);  // generic
  out.push_back(Symmetry{identity_perm(n), {1.0, 0.0}, true, 2});  // collinear
  if (n >= 3) {
    auto pairing = identity_perm(n);
    for (std::size_t k = 0; k + 1 < n; k += 2) std::swap(pairing[k], pairing[k + 1]);
    out.push_back(Symmetry{pairing, {1.0, 0.0}, true, 2});  // conjugate pairs
  }
  for (std::size_t k = std::max<std::size_t>(3, n - 1); k <= n; ++k) {
    // k points on a k-fold orbit, the remaining one (if any) at the origin
    std::vector<std::size_t> cycle = identity_perm(n);
    const std::size_t first = n - k;
    for (std::size_t i = 0; i < k; ++i) cycle[first + i] = first + (i + 1) % k;
    out.push_back(Symmetry{cycle, std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(k)),
                           false, k});
  }
  return out;
}

Points centred(Points w) {
  Complex mean{0.0, 0.0};
  for (const auto& x : w) mean += x;
  mean /= static_cast<double>(w.size());
  for (auto& x : w) x -= mean;
  return w;
}

DescentProblem config_problem(PotentialKind kind, std::size_t n, const Symmetry* sym) {
  DescentProblem problem;
  problem.value = [kind](const Eigen::VectorXd& x) {
    const auto w = to_points(x);
    if (!(min_pairwise_distance(w) > 0.0)) return std::numeric_limits<double>::infinity();
    return config_potential(kind, w);
  };
  problem.gradient = [kind, sym](const Eigen::VectorXd& x) {
    auto g = config_gradient(kind, to_points(x));
    if (sym) g = sym->project(g);
    return to_real(g);
  };
  problem.admissible = [n](const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
    (void)n;
    if (!to.allFinite()) return false;
    return abs_disc(to_points(to)) >= kDeltaGuard * abs_disc(to_points(from));
  };
  return problem;
}

std::vector<std::vector<std::size_t>> all_perms(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  auto p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Points> interpolate(const Points& a, const Points& b, double max_step) {
  const double margin = std::min(min_pairwise_distance(a), min_pairwise_distance(b));
  const double d = max_displacement(a, b);
  const double limit = std::min(max_step, margin / 4.0);
  const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(d / limit)));
  std::vector<Points> out;
  for (std::size_t s = 1; s <= pieces; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(pieces);
    Points w(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) w[k] = (1.0 - t) * a[k] + t * b[k];
    out.push_back(std::move(w));
  }
  out.back() = b;
  return out;
}

ConnectingRecipe make_recipe(const CriticalCatalog& cat, std::size_t from, std::size_t to,
                             double max_step) {
  const auto& a = cat.entries[from].config.points();
  const auto& b = cat.entries[to].config.points();
  const std::size_t n = a.size();
  double best_margin = -1.0;
  double best_disp = std::numeric_limits<double>::infinity();
  Points best_target;
  for (const auto& perm : all_perms(n)) {
    for (int step = 0; step < 72; ++step) {
      const Complex rot = std::polar(1.0, 2.0 * std::numbers::pi * step / 72.0);
      Points target(n);
      for (std::size_t i = 0; i < n; ++i) target[i] = rot * b[perm[i]];
      const double margin = segment_margin(a, target);
      const double disp = max_displacement(a, target);
      if (margin > best_margin + 1e-12 || (std::abs(margin - best_margin) <= 1e-12 && disp < best_disp)) {
        best_margin = margin;
        best_disp = disp;
        best_target = std::move(target);
      }
    }
  }
  ConnectingRecipe recipe{from, to, {}};
  recipe.waypoints.emplace_back(a);
  // subdivide so consecutive waypoints stay within the displacement bound
  const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(best_disp / max_step)));
  for (std::size_t s = 1; s <= pieces; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(pieces);
    Points w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = (1.0 - t) * a[k] + t * best_target[k];
    recipe.waypoints.emplace_back(std::move(w));
  }
  return recipe;
}

}  // namespace

CriticalCatalog build_catalog(std::size_t n, std::size_t seeds, const CatalogOptions& options) {
  if (n < 2) throw ValidationError("catalog needs n >= 2");
  if (n > kMaxCatalogPoints) {
    throw ValidationError("catalog unavailable for n = " + std::to_string(n) +
                          " (critical sets are catalogued for n <= " +
                          std::to_string(kMaxCatalogPoints) + ")");
  }
  const auto families = seed_families(n);

  // Draw all seeds up front so the result does not depend on thread count.
  Rng rng(options.seed);
  std::vector<Points> starts(seeds);
  std::vector<std::size_t> family_of(seeds);
  for (std::size_t s = 0; s < seeds; ++s) {
    family_of[s] = s % families.size();
    const auto& fam = families[family_of[s]];
    do {
      Points w(n);
      for (auto& x : w) x = gaussian_complex(rng);
      if (fam) w = fam->project(w);
      starts[s] = centred(std::move(w));
    } while (!(min_pairwise_distance(starts[s]) > 1e-2));
  }

  FlowOptions flow;
  flow.grad_tol = 0.1 * options.grad_tol;
  flow.max_steps = options.max_steps;
  std::vector<std::optional<Points>> found(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    const auto& fam = families[family_of[s]];
    const auto problem = config_problem(options.potential, n, fam ? &*fam : nullptr);
    const auto result = descend(problem, to_real(starts[s]), flow);
    if (!result.converged) return;
    const auto w = centred(to_points(result.points.back()));
    if (config_gradient_norm(options.potential, w) < options.grad_tol) found[s] = w;
  });

  CriticalCatalog cat;
  cat.n = n;
  cat.potential = options.potential;
  cat.grad_tol = options.grad_tol;
  for (const auto& w : found) {
    if (!w) continue;
    bool duplicate = false;
    for (const auto& e : cat.entries) {
      if (shape_distance(e.config.points(), *w).distance < options.dedup_tol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    CatalogEntry entry{PlanarConfig(*w).canonical(), 0, {}, 0.0, 0.0, {}};
    entry.inertia = config_hessian_inertia(options.potential, entry.config.points());
    entry.index = static_cast<int>(entry.inertia.negative);
    entry.value = config_potential(options.potential, entry.config.points());
    entry.grad_norm = config_gradient_norm(options.potential, entry.config.points());
    entry.shape_hash = shape_hash(entry.config);
    cat.entries.push_back(std::move(entry));
  }
  std::stable_sort(cat.entries.begin(), cat.entries.end(),
                   [](const CatalogEntry& a, const CatalogEntry& b) {
                     return a.value != b.value ? a.value < b.value : a.shape_hash < b.shape_hash;
                   });
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    for (std::size_t j = 0; j < cat.entries.size(); ++j) {
      if (i != j) cat.recipes.push_back(make_recipe(cat, i, j, options.max_displacement));
    }
  }
  return cat;
}

const PathLeg* PathPolyline::leg(const std::string& name) const {
  for (const auto& l : legs) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

const CriticalCatalog& cached_catalog(std::size_t n, const PlanOptions& options) {
  using Key = std::tuple<std::size_t, int, std::size_t, std::uint64_t>;
  static std::mutex mutex;
  static std::map<Key, CriticalCatalog> cache;
  const Key key{n, static_cast<int>(options.potential), options.catalog_seeds, options.catalog_seed};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    CatalogOptions copt;
    copt.potential = options.potential;
    copt.seed = options.catalog_seed;
    copt.max_displacement = options.max_displacement;
    it = cache.emplace(key, build_catalog(n, options.catalog_seeds, copt)).first;
  }
  return it->second;
}

namespace {

class PathBuilder {
public:
  explicit PathBuilder(double max_step) : max_step_(max_step) {}

  void add_leg(const std::string& name, const std::vector<Points>& leg) {
    if (leg.empty()) return;
    PathLeg l{name, 0, 0};
    if (samples_.empty()) {
      samples_.push_back(leg.front());
    } else {
      append(leg.front());
    }
    l.begin = samples_.size() - 1;
    for (std::size_t i = 1; i < leg.size(); ++i) append(leg[i]);
    l.end = samples_.size() - 1;
    legs_.push_back(std::move(l));
  }

  PathPolyline finish() && {
    PathPolyline out;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (auto& w : samples_) {
      out.min_margin = std::min(out.min_margin, min_pairwise_distance(w));
      out.samples.emplace_back(std::move(w));
    }
    out.legs = std::move(legs_);
    return out;
  }

private:
  void append(const Points& next) {
    const Points prev = samples_.back();
    for (auto& w : interpolate(prev, next, max_step_)) samples_.push_back(std::move(w));
  }

  double max_step_;
  std::vector<Points> samples_;
  std::vector<PathLeg> legs_;
};

std::vector<Points> retraction_leg(const PlanarConfig& c, double max_step) {
  const double shift = std::abs(c.barycentre());
  const auto pieces = static_cast<std::size_t>(std::ceil(shift / max_step));
  std::vector<Points> out{c.points()};
  for (std::size_t k = 1; k <= pieces; ++k) {
    out.push_back(retract_barycentre(c, static_cast<double>(k) / pieces).points());
  }
  return out;
}

std::vector<Points> rotation_leg(const Points& from, Complex rotation, double max_step) {
  double radius = 0.0;
  for (const auto& w : from) radius = std::max(radius, std::abs(w));
  const double angle = std::arg(rotation);
  const auto pieces = static_cast<std::size_t>(std::ceil(std::abs(angle) * radius / max_step));
  std::vector<Points> out{from};
  for (std::size_t k = 1; k <= pieces; ++k) {
    const Complex r = std::polar(1.0, angle * static_cast<double>(k) / pieces);
    Points w(from);
    for (auto& x : w) x *= r;
    out.push_back(std::move(w));
  }
  return out;
}

struct EntryMatch {
  std::size_t entry;
  ShapeMatch match;
};

EntryMatch match_entry(const CriticalCatalog& cat, const Points& q, double tol) {
  std::optional<EntryMatch> best;
  for (std::size_t e = 0; e < cat.entries.size(); ++e) {
    const auto m = shape_distance(cat.entries[e].config.points(), q);
    if (!best || m.distance < best->match.distance) best = EntryMatch{e, m};
  }
  if (!best || best->match.distance > tol) {
    std::ostringstream msg;
    msg << "catalog miss: flow terminal matches no critical configuration within " << tol;
    if (best) msg << " (closest entry at shape distance " << best->match.distance << ")";
    throw CatalogMiss(msg.str());
  }
  return *best;
}

// Count of relabellings whose aligned distance ties with the best one.
std::size_t count_ties(const Points& a, const Points& b, double best, double tol) {
  std::size_t ties = 0;
  for (const auto& perm : all_perms(a.size())) {
    Complex corr{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) corr += std::conj(a[i]) * b[perm[i]];
    const Complex rot = std::abs(corr) > 0.0 ? corr / std::abs(corr) : Complex{1.0, 0.0};
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(rot * a[i] - b[perm[i]]));
    if (d <= best + tol) ++ties;
  }
  return ties > 0 ? ties - 1 : 0;
}

}  // namespace

PathPolyline plan(const PlanarConfig& p, const PlanarConfig& p_prime, const PlanOptions& options) {
  if (p.n() > kMaxCatalogPoints) {
    throw ValidationError("catalog unavailable for n = " + std::to_string(p.n()) +
                          " (critical sets are catalogued for n <= " +
                          std::to_string(kMaxCatalogPoints) + ")");
  }
  if (p.n() != p_prime.n()) throw ValidationError("configurations have different point counts");
  if (p.n() < 2) throw ValidationError("planning needs n >= 2");
  return plan(p, p_prime, options, cached_catalog(p.n(), options));
}

PathPolyline plan(const PlanarConfig& p, const PlanarConfig& p_prime, const PlanOptions& options,
                  const CriticalCatalog& catalog) {
  const std::size_t n = p.n();
  if (n != p_prime.n()) throw ValidationError("configurations have different point counts");
  if (n < 2) throw ValidationError("planning needs n >= 2");
  const double step = options.max_displacement;

  if (matching_distance(p.points(), p_prime.points()).distance <= 1e-12 * std::max(1.0, p.scale())) {
    PathBuilder b(step);
    b.add_leg("identity", {p.points(), p.points()});
    return std::move(b).finish();
  }
  if (catalog.n != n) throw ValidationError("catalog was built for a different n");

  // (1) barycentre retraction at both ends
  const auto retract_p = retraction_leg(p, step);
  const auto retract_q = retraction_leg(p_prime, step);

  // (2) descending flow of f(w, w') = g(w) + g(w') in root coordinates
  const auto idx = static_cast<Eigen::Index>(2 * n);
  DescentProblem problem;
  problem.value = [&](const Eigen::VectorXd& x) {
    const auto a = to_points(x.head(idx));
    const auto b = to_points(x.tail(idx));
    if (!(min_pairwise_distance(a) > 0.0) || !(min_pairwise_distance(b) > 0.0)) {
      return std::numeric_limits<double>::infinity();
    }
    return config_potential(options.potential, a) + config_potential(options.potential, b);
  };
  problem.gradient = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(2 * idx);
    g.head(idx) = to_real(config_gradient(options.potential, to_points(x.head(idx))));
    g.tail(idx) = to_real(config_gradient(options.potential, to_points(x.tail(idx))));
    return g;
  };
  problem.admissible = [&](const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
    if (!to.allFinite()) return false;
    return abs_disc(to_points(to.head(idx))) >= kDeltaGuard * abs_disc(to_points(from.head(idx))) &&
           abs_disc(to_points(to.tail(idx))) >= kDeltaGuard * abs_disc(to_points(from.tail(idx)));
  };
  Eigen::VectorXd start(2 * idx);
  start.head(idx) = to_real(retract_p.back());
  start.tail(idx) = to_real(retract_q.back());
  const auto flow = descend(problem, start, options.flow);
  if (!flow.converged) {
    throw NumericError("flow did not converge within " + std::to_string(options.flow.max_steps) +
                       " steps (gradient norm " + std::to_string(flow.grad_norms.back()) + ")");
  }
  std::vector<Points> flow_p, flow_q;
  for (const auto& x : flow.points) {
    flow_p.push_back(to_points(x.head(idx)));
    flow_q.push_back(to_points(x.tail(idx)));
  }
  const Points& q = flow_p.back();
  const Points& q_prime = flow_q.back();

  // (3) connecting leg on the critical set
  const auto ma = match_entry(catalog, q, options.match_tol);
  const auto mb = match_entry(catalog, q_prime, options.match_tol);
  std::vector<Points> connect;
  std::size_t ties = 0;
  if (ma.entry == mb.entry) {
    const auto direct = shape_distance(q, q_prime);
    ties = count_ties(q, q_prime, direct.distance, options.match_tol);
    connect = rotation_leg(q, direct.rotation, step);
  } else {
    const auto* recipe = catalog.recipe(ma.entry, mb.entry);
    if (!recipe) throw CatalogMiss("catalog has no recipe between the matched entries");
    // relabel the recipe so its first waypoint carries q's labels
    for (const auto& wp : recipe->waypoints) {
      Points w(n);
      for (std::size_t i = 0; i < n; ++i) w[ma.match.perm[i]] = ma.match.rotation * wp.points()[i];
      connect.push_back(std::move(w));
    }
    const auto tail = shape_distance(connect.back(), q_prime);
    ties = count_ties(connect.back(), q_prime, tail.distance, options.match_tol);
    auto spin = rotation_leg(connect.back(), tail.rotation, step);
    connect.insert(connect.end(), spin.begin() + 1, spin.end());
  }

  // relabel the p'-side legs to agree with the end of the connecting leg
  const auto relabel = matching_distance(connect.back(), q_prime);
  auto permute = [&](const Points& w) {
    Points out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = w[relabel.perm[i]];
    return out;
  };
  std::vector<Points> flow_back, retract_back;
  for (auto it = flow_q.rbegin(); it != flow_q.rend(); ++it) flow_back.push_back(permute(*it));
  for (auto it = retract_q.rbegin(); it != retract_q.rend(); ++it) retract_back.push_back(permute(*it));

  PathBuilder builder(step);
  builder.add_leg("retract_p", retract_p);
  builder.add_leg("flow_p", flow_p);
  builder.add_leg("connect", connect);
  builder.add_leg("flow_p_prime", flow_back);
  builder.add_leg("retract_p_prime", retract_back);
  auto path = std::move(builder).finish();
  path.entry_p = ma.entry;
  path.entry_p_prime = mb.entry;
  path.tied_matches = ties;
  path.flow_steps = flow.points.size() - 1;
  return path;
}

PathAudit audit_path(const PathPolyline& path, std::size_t density) {
  PathAudit audit;
  audit.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < path.samples.size(); ++s) {
    const auto& a = path.samples[s].points();
    audit.min_margin = std::min(audit.min_margin, min_pairwise_distance(a));
    if (s + 1 == path.samples.size()) break;
    const auto& b = path.samples[s + 1].points();
    audit.max_displacement = std::max(audit.max_displacement, max_displacement(a, b));
    Points w(a.size());
    for (std::size_t k = 1; k < density; ++k) {
      const double t = static_cast<double>(k) / density;
      for (std::size_t i = 0; i < a.size(); ++i) w[i] = (1.0 - t) * a[i] + t * b[i];
      audit.min_margin = std::min(audit.min_margin, min_pairwise_distance(w));
    }
  }
  return audit;
}

std::string render_svg(const PathPolyline& path) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& c : path.samples) {
    for (const auto& w : c.points()) {
      lo_x = std::min(lo_x, w.real());
      hi_x = std::max(hi_x, w.real());
      lo_y = std::min(lo_y, w.imag());
      hi_y = std::max(hi_y, w.imag());
    }
  }
  const double pad = 0.1 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  lo_x -= pad;
  lo_y -= pad;
  const double width = hi_x - lo_x + pad;
  const double height = hi_y - lo_y + pad;
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x << ' ' << -(lo_y + height)
      << ' ' << width << ' ' << height << "\" width=\"600\" height=\"600\">\n";
  const double stroke = 0.004 * std::max(width, height);
  const std::size_t n = path.samples.empty() ? 0 : path.samples.front().n();
  for (std::size_t i = 0; i < n; ++i) {
    svg << "  <polyline fill=\"none\" stroke=\"" << colours[i % 6] << "\" stroke-width=\"" << stroke
        << "\" points=\"";
    for (const auto& c : path.samples) svg << c.points()[i].real() << ',' << -c.points()[i].imag() << ' ';
    svg << "\"/>\n";
    const auto& first = path.samples.front().points()[i];
    const auto& last = path.samples.back().points()[i];
    svg << "  <circle cx=\"" << first.real() << "\" cy=\"" << -first.imag() << "\" r=\"" << 3 * stroke
        << "\" fill=\"none\" stroke=\"" << colours[i % 6] << "\"/>\n";
    svg << "  <circle cx=\"" << last.real() << "\" cy=\"" << -last.imag() << "\" r=\"" << 3 * stroke
        << "\" fill=\"" << colours[i % 6] << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace disctc
