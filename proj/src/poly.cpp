#include "disctc/poly.hpp"

#include <algorithm>
#include <string>

#include "disctc/error.hpp"

namespace disctc {

namespace {

// Neumaier's variant of Kahan summation on one real component.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

SparsePoly::SparsePoly(std::size_t dim) : dim_(dim) {
  if (dim == 0) {
    throw ValidationError("polynomial dimension must be positive");
  }
}

SparsePoly::SparsePoly(std::size_t dim, TermMap terms) : SparsePoly(dim) {
  for (auto& [exp, c] : terms) {
    check_index(exp);
    if (c != Complex{0.0, 0.0}) {
      terms_.emplace(exp, c);
    }
  }
}

SparsePoly SparsePoly::constant(std::size_t dim, Complex c) {
  SparsePoly p(dim);
  p.add_term(MultiIndex(dim, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t dim, std::size_t j) {
  if (j >= dim) {
    throw ValidationError("variable index " + std::to_string(j) + " out of range");
  }
  MultiIndex exp(dim, 0);
  exp[j] = 1;
  SparsePoly p(dim);
  p.add_term(exp, 1.0);
  return p;
}

void SparsePoly::check_index(const MultiIndex& exp) const {
  if (exp.size() != dim_) {
    throw ValidationError("multi-index length " + std::to_string(exp.size()) +
                          " does not match dimension " + std::to_string(dim_));
  }
  for (int e : exp) {
    if (e < 0) {
      throw ValidationError("negative exponent in multi-index");
    }
  }
}

void SparsePoly::add_term(const MultiIndex& exp, Complex c) {
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
  }
  if (it->second == Complex{0.0, 0.0}) {
    terms_.erase(it);
  }
}

int SparsePoly::total_degree() const {
  int deg = 0;
  for (const auto& [exp, c] : terms_) {
    int d = 0;
    for (int e : exp) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

int SparsePoly::max_exponent(std::size_t j) const {
  int deg = 0;
  for (const auto& [exp, c] : terms_) deg = std::max(deg, exp[j]);
  return deg;
}

std::vector<MultiIndex> SparsePoly::support() const {
  std::vector<MultiIndex> out;
  out.reserve(terms_.size());
  for (const auto& [exp, c] : terms_) out.push_back(exp);
  return out;
}

Complex SparsePoly::eval(std::span<const Complex> z) const {
  if (z.size() != dim_) {
    throw ValidationError("evaluation point has length " + std::to_string(z.size()) +
                          ", expected " + std::to_string(dim_));
  }
  // powers[j][e] = z_j^e, built by repeated multiplication
  std::vector<std::vector<Complex>> powers(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const int top = max_exponent(j);
    powers[j].resize(static_cast<std::size_t>(top) + 1);
    powers[j][0] = 1.0;
    for (int e = 1; e <= top; ++e) powers[j][e] = powers[j][e - 1] * z[j];
  }
  CompensatedSum re, im;
  for (const auto& [exp, c] : terms_) {
    Complex mono = c;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (exp[j] != 0) mono *= powers[j][exp[j]];
    }
    re.add(mono.real());
    im.add(mono.imag());
  }
  return {re.value(), im.value()};
}

SparsePoly SparsePoly::partial(std::size_t j) const {
  if (j >= dim_) {
    throw ValidationError("partial derivative index " + std::to_string(j) + " out of range");
  }
  SparsePoly out(dim_);
  for (const auto& [exp, c] : terms_) {
    if (exp[j] == 0) continue;
    MultiIndex lowered = exp;
    lowered[j] -= 1;
    out.add_term(lowered, c * static_cast<double>(exp[j]));
  }
  return out;
}

SparsePoly SparsePoly::restrict_to_zero(const std::vector<bool>& zeroed) const {
  if (zeroed.size() != dim_) {
    throw ValidationError("zero pattern length does not match dimension");
  }
  SparsePoly out(dim_);
  for (const auto& [exp, c] : terms_) {
    bool killed = false;
    for (std::size_t j = 0; j < dim_ && !killed; ++j) killed = zeroed[j] && exp[j] > 0;
    if (!killed) out.terms_.emplace_hint(out.terms_.end(), exp, c);
  }
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  if (other.dim_ != dim_) throw ValidationError("dimension mismatch in polynomial sum");
  for (const auto& [exp, c] : other.terms_) add_term(exp, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
  if (other.dim_ != dim_) throw ValidationError("dimension mismatch in polynomial difference");
  for (const auto& [exp, c] : other.terms_) add_term(exp, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(Complex c) {
  if (c == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [exp, coeff] : terms_) coeff *= c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.dim_ != b.dim_) throw ValidationError("dimension mismatch in polynomial product");
  SparsePoly out(a.dim_);
  MultiIndex exp(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t j = 0; j < a.dim_; ++j) exp[j] = ea[j] + eb[j];
      out.add_term(exp, ca * cb);
    }
  }
  return out;
}

}  // namespace disctc
