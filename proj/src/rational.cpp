#include "rzlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "rzlab/error.hpp"

namespace rzlab {

const char* to_string(Err e) {
  switch (e) {
    case Err::MeanNotZero: return "MeanNotZero";
    case Err::VarianceNotOne: return "VarianceNotOne";
    case Err::MissingK: return "MissingK";
    case Err::BadIndexSet: return "BadIndexSet";
    case Err::ValueOutsideS: return "ValueOutsideS";
    case Err::BadLeadingSign: return "BadLeadingSign";
    case Err::DegreeTooSmall: return "DegreeTooSmall";
    case Err::DegreeExceedsM: return "DegreeExceedsM";
    case Err::ZeroVariancePoint: return "ZeroVariancePoint";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::InexactCoefficients: return "InexactCoefficients";
    case Err::EndpointRoot: return "EndpointRoot";
    case Err::NumericalBreakdown: return "NumericalBreakdown";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::DegenerateDesign: return "DegenerateDesign";
    case Err::ZeroSuccessRecord: return "ZeroSuccessRecord";
    case Err::BadParams: return "BadParams";
    case Err::BlockOverlap: return "BlockOverlap";
    case Err::InfeasibleConditioning: return "InfeasibleConditioning";
    case Err::NotSquarefree: return "NotSquarefree";
    case Err::DegreeUnsupported: return "DegreeUnsupported";
    case Err::InvalidSpecForLemma: return "InvalidSpecForLemma";
    case Err::PoleAtUnitCircle: return "PoleAtUnitCircle";
    case Err::UnknownSubcommand: return "UnknownSubcommand";
    case Err::BadConfig: return "BadConfig";
    case Err::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw Error(Err::InexactCoefficients, "non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), d);
  return q;
}

double to_double_nearest(const Rational& q) {
  // mpq_get_d truncates toward zero; test the next representable toward q.
  double d0 = mpq_get_d(q.get_mpq_t());
  if (!std::isfinite(d0)) return d0;
  double d1 = std::nextafter(d0, sgn(q) >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(d1)) return d0;
  Rational e0 = abs(q - rational_from_double(d0));
  Rational e1 = abs(rational_from_double(d1) - q);
  return e1 < e0 ? d1 : d0;
}

Rational parse_rational(const std::string& raw) {
  // trim
  size_t b = raw.find_first_not_of(" \t");
  size_t e = raw.find_last_not_of(" \t");
  if (b == std::string::npos) throw Error(Err::BadConfig, "empty rational literal");
  std::string s = raw.substr(b, e - b + 1);

  if (s.find('/') != std::string::npos) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw Error(Err::BadConfig, "bad rational literal '" + s + "'");
    if (sgn(Rational(q.get_den())) == 0)
      throw Error(Err::BadConfig, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  // decimal / scientific form: [sign] digits [. digits] [e sign digits]
  std::string digits;
  long exp10 = 0;
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  bool any = false, frac = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (frac) --exp10;
      any = true;
    } else if (c == '.' && !frac) {
      frac = true;
    } else if ((c == 'e' || c == 'E') && any) {
      exp10 += std::strtol(s.c_str() + i + 1, nullptr, 10);
      break;
    } else {
      throw Error(Err::BadConfig, "bad numeric literal '" + s + "'");
    }
  }
  if (!any) throw Error(Err::BadConfig, "bad numeric literal '" + s + "'");
  Integer num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  Rational q(num);
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0)
    q *= Rational(p10);
  else
    q /= Rational(p10);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace rzlab
