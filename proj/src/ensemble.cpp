#include "rzlab/ensemble.hpp"

#include <cmath>

#include "rzlab/error.hpp"

namespace rzlab {

CoefficientLaw CoefficientLaw::gaussian() {
  CoefficientLaw law;
  law.kind_ = LawKind::Gaussian;
  return law;
}

CoefficientLaw CoefficientLaw::uniform_symmetric(double half_width) {
  CoefficientLaw law;
  law.kind_ = LawKind::UniformSymmetric;
  law.half_width_ = half_width;
  return law;
}

CoefficientLaw CoefficientLaw::rademacher() {
  CoefficientLaw law;
  law.kind_ = LawKind::Rademacher;
  return law;
}

CoefficientLaw CoefficientLaw::finite_discrete(std::vector<Atom> atoms) {
  CoefficientLaw law;
  law.kind_ = LawKind::FiniteDiscrete;
  law.atoms_ = std::move(atoms);
  // cumulative sampling thresholds on the 2^64 scale
  Rational cum = 0;
  Rational scale;
  mpq_set_str(scale.get_mpq_t(), "18446744073709551616", 10);  // 2^64
  for (const auto& a : law.atoms_) {
    cum += a.prob;
    Rational t = cum * scale;
    Integer fl = t.get_num() / t.get_den();
    uint64_t v = fl.fits_ulong_p() ? fl.get_ui() : ~0ull;
    if (fl >= Integer("18446744073709551616")) v = ~0ull;
    law.cum_threshold_.push_back(v);
  }
  if (!law.cum_threshold_.empty()) law.cum_threshold_.back() = ~0ull;
  return law;
}

double CoefficientLaw::sample(TrialRng& rng) const {
  switch (kind_) {
    case LawKind::Gaussian:
      return rng.next_gaussian();
    case LawKind::UniformSymmetric:
      return (2.0 * rng.next_unit() - 1.0) * half_width_;
    case LawKind::Rademacher:
      return (rng.next_u64() & 1) ? 1.0 : -1.0;
    case LawKind::FiniteDiscrete: {
      uint64_t r = rng.next_u64();
      for (size_t i = 0; i < cum_threshold_.size(); ++i)
        if (r <= cum_threshold_[i]) return to_double_nearest(atoms_[i].value);
      return to_double_nearest(atoms_.back().value);
    }
  }
  return 0.0;
}

Rational CoefficientLaw::sample_exact(TrialRng& rng) const {
  if (kind_ == LawKind::FiniteDiscrete) {
    uint64_t r = rng.next_u64();
    for (size_t i = 0; i < cum_threshold_.size(); ++i)
      if (r <= cum_threshold_[i]) return atoms_[i].value;
    return atoms_.back().value;
  }
  if (kind_ == LawKind::Rademacher) return (rng.next_u64() & 1) ? Rational(1) : Rational(-1);
  return rational_from_double(sample(rng));
}

double CoefficientLaw::moment_abs(int p) const {
  if (p < 1) throw Error(Err::BadParams, "moment order must be >= 1");
  switch (kind_) {
    case LawKind::Gaussian: {
      // E|Z|^p: (p-1)!! for even p, sqrt(2/pi) 2^{(p-1)/2} ((p-1)/2)! for odd p
      if (p % 2 == 0) {
        double v = 1;
        for (int i = p - 1; i > 1; i -= 2) v *= i;
        return v;
      }
      double v = std::sqrt(2.0 / M_PI);
      int h = (p - 1) / 2;
      for (int i = 1; i <= h; ++i) v *= 2.0 * i;
      return v;
    }
    case LawKind::UniformSymmetric:
      return std::pow(half_width_, p) / (p + 1);
    case LawKind::Rademacher:
      return 1.0;
    case LawKind::FiniteDiscrete: {
      Rational acc = 0;
      for (const auto& a : atoms_) {
        Rational av = abs(a.value);
        Rational pow = 1;
        for (int i = 0; i < p; ++i) pow *= av;
        acc += a.prob * pow;
      }
      return to_double_nearest(acc);
    }
  }
  return 0.0;
}

bool CoefficientLaw::box_reachable(double center, double eps) const {
  switch (kind_) {
    case LawKind::Gaussian:
      return eps > 0;
    case LawKind::UniformSymmetric:
      return eps > 0 && center - eps < half_width_ && center + eps > -half_width_;
    case LawKind::Rademacher:
      return std::fabs(center - 1.0) < eps || std::fabs(center + 1.0) < eps;
    case LawKind::FiniteDiscrete:
      for (const auto& a : atoms_)
        if (std::fabs(to_double_nearest(a.value) - center) < eps) return true;
      return false;
  }
  return false;
}

bool CoefficientLaw::operator==(const CoefficientLaw& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == LawKind::UniformSymmetric) return half_width_ == o.half_width_;
  if (kind_ == LawKind::FiniteDiscrete) {
    if (atoms_.size() != o.atoms_.size()) return false;
    for (size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].value != o.atoms_[i].value || atoms_[i].prob != o.atoms_[i].prob) return false;
  }
  return true;
}

double law_moment(const CoefficientLaw& law, int p) { return law.moment_abs(p); }

Rational FixedCoeffSpec::value_of(int i) const {
  auto it = values.find(i);
  return it == values.end() ? Rational(0) : it->second;
}

int GrowthMode::k_of(int n) const {
  switch (kind) {
    case Kind::None:
      return 0;
    case Kind::LogK:
      return std::max(1, static_cast<int>(std::floor(a * std::log(static_cast<double>(n)))));
    case Kind::PowK:
      return std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(n), a))));
  }
  return 0;
}

FixedCoeffSpec EnsembleSpec::effective_fixed() const {
  if (!growth.enabled()) return fixed;
  FixedCoeffSpec f;
  f.k = growth.k_of(n);
  Rational c1 = fixed.values.count(1) ? fixed.values.at(1) : Rational(1);
  for (int i = 1; i <= f.k; ++i) {
    f.S.insert(i);
    f.values[i] = (i == 1) ? c1 : Rational(0);
  }
  return f;
}

const char* to_string(SpecError e) {
  switch (e) {
    case SpecError::MeanNotZero: return "MeanNotZero";
    case SpecError::VarianceNotOne: return "VarianceNotOne";
    case SpecError::MissingK: return "MissingK";
    case SpecError::BadIndexSet: return "BadIndexSet";
    case SpecError::ValueOutsideS: return "ValueOutsideS";
    case SpecError::BadLeadingSign: return "BadLeadingSign";
    case SpecError::DegreeTooSmall: return "DegreeTooSmall";
  }
  return "?";
}

std::vector<SpecError> validate_spec(const EnsembleSpec& spec) {
  std::vector<SpecError> errs;
  const double tol = 1e-12;

  // law invariants
  switch (spec.law.kind()) {
    case LawKind::Gaussian:
    case LawKind::Rademacher:
      break;  // zero mean, unit variance by construction
    case LawKind::UniformSymmetric: {
      double var = spec.law.half_width() * spec.law.half_width() / 3.0;
      if (std::fabs(var - 1.0) > tol) errs.push_back(SpecError::VarianceNotOne);
      break;
    }
    case LawKind::FiniteDiscrete: {
      Rational mean = 0, var = 0, mass = 0;
      bool positive = true;
      for (const auto& a : spec.law.atoms()) {
        if (sgn(a.prob) <= 0) positive = false;
        mean += a.prob * a.value;
        var += a.prob * a.value * a.value;
        mass += a.prob;
      }
      if (!positive || mass != 1) errs.push_back(SpecError::VarianceNotOne);
      if (sgn(mean) != 0) errs.push_back(SpecError::MeanNotZero);
      if (var != 1 && positive && mass == 1) errs.push_back(SpecError::VarianceNotOne);
      break;
    }
  }

  FixedCoeffSpec fixed = spec.effective_fixed();
  if (!fixed.S.empty()) {
    if (fixed.S.count(fixed.k) == 0) errs.push_back(SpecError::MissingK);
    for (int i : fixed.S)
      if (i < 1 || i > fixed.k) {
        errs.push_back(SpecError::BadIndexSet);
        break;
      }
    for (const auto& [i, v] : fixed.values) {
      (void)v;
      if (fixed.S.count(i) == 0) {
        errs.push_back(SpecError::ValueOutsideS);
        break;
      }
    }
    if (fixed.S.count(1) && sgn(fixed.value_of(1)) <= 0) errs.push_back(SpecError::BadLeadingSign);
  }
  if (spec.n <= fixed.k || spec.n < 1) errs.push_back(SpecError::DegreeTooSmall);
  return errs;
}

Polynomial sample_polynomial(const EnsembleSpec& spec, uint64_t seed) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  TrialRng rng(seed, 0);
  int n = spec.n;
  std::vector<Rational> coeffs(n, Rational(0));
  // slot i holds the coefficient of x^{n-i}; draw random slots in slot order
  for (int i = 1; i <= n; ++i) {
    if (fixed.S.count(i))
      coeffs[n - i] = fixed.value_of(i);
    else
      coeffs[n - i] = spec.law.sample_exact(rng);
  }
  return Polynomial::from_exact(std::move(coeffs));
}

EnsembleSpec monic_spec(int n, CoefficientLaw law) {
  EnsembleSpec s;
  s.n = n;
  s.law = std::move(law);
  s.fixed.k = 1;
  s.fixed.S = {1};
  s.fixed.values[1] = 1;
  return s;
}

EnsembleSpec fully_random_spec(int n, CoefficientLaw law) {
  EnsembleSpec s;
  s.n = n;
  s.law = std::move(law);
  return s;
}

}  // namespace rzlab
