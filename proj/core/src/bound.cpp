#include "wsnsec/bound.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/mpfr.hpp>

namespace wsnsec::bound {

namespace {

using mp75 =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<75>>;

std::string sci_string(const mp75& v) {
  return v.str(25, std::ios_base::scientific);
}

// t = first - second with both magnitudes held as logs.
void log_subtract(double ln_first, double ln_second, int& sign, double& ln_abs) {
  if (ln_first == ln_second) {
    sign = 0;
    ln_abs = -std::numeric_limits<double>::infinity();
    return;
  }
  if (ln_first > ln_second) {
    sign = 1;
    ln_abs = ln_first + std::log1p(-std::exp(ln_second - ln_first));
  } else {
    sign = -1;
    ln_abs = ln_second + std::log1p(-std::exp(ln_first - ln_second));
  }
}

double rel_gap(double ln_a, double ln_b) {
  return std::abs(std::expm1(ln_a - ln_b));
}

}  // namespace

std::string to_string(Interpretation interp) {
  return interp == Interpretation::Grouped ? "grouped" : "literal";
}

Interpretation interpretation_from_string(const std::string& text) {
  if (text == "grouped") return Interpretation::Grouped;
  if (text == "literal") return Interpretation::Literal;
  throw std::invalid_argument("unknown interpretation: " + text +
                              " (expected grouped or literal)");
}

void validate(const SecurityQuery& query) {
  if (query.n_bits < 2)
    throw std::invalid_argument("n_bits must be >= 2");
  if (!(query.m_len >= 1))
    throw std::invalid_argument("m_len must be >= 1");
  if (!(query.epsilon > 0) || !(query.epsilon < 1))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(query.attacker_cycles >= 0))
    throw std::invalid_argument("attacker_cycles must be >= 0");
}

RouteEval eval_log(unsigned n_bits, double m_len, double epsilon,
                   Interpretation interp) {
  const double n = static_cast<double>(n_bits);
  const double ln2 = std::log(2.0);
  const double ln_n_ln2 = std::log(n * ln2);

  double a = interp == Interpretation::Grouped ? std::cbrt(n * ln2)
                                               : n * std::cbrt(ln2);
  double b = std::pow(ln_n_ln2, 2.0 / 3.0);

  RouteEval out;
  out.ln_l = std::log(2.8e-3) + 1.9229 * a * b;

  const double log2_n = std::log2(n);
  // first = L / (6 N log2(N) eps^-2 M^2)
  out.ln_first = out.ln_l - std::log(6.0) - std::log(n) - std::log(log2_n) +
                 2.0 * std::log(epsilon) - 2.0 * std::log(m_len);
  // second = 2^7 N eps^-2 M^2 log2(8 N eps^-1 M)
  const double inner = std::log2(8.0 * n * m_len / epsilon);
  out.ln_second = 7.0 * ln2 + std::log(n) - 2.0 * std::log(epsilon) +
                  2.0 * std::log(m_len) + std::log(inner);

  log_subtract(out.ln_first, out.ln_second, out.t_sign, out.ln_t_abs);
  return out;
}

PreciseEval eval_precise(unsigned n_bits, double m_len, double epsilon,
                         Interpretation interp) {
  // Decimal constants enter as strings so they are rounded once, at 75
  // digits, rather than through an intermediate double.
  static const mp75 kScale("2.8e-3");
  static const mp75 kExponentCoeff("1.9229");

  const mp75 n(n_bits);
  const mp75 m(m_len);
  const mp75 eps(epsilon);
  const mp75 ln2 = log(mp75(2));
  const mp75 ln_n_ln2 = log(n * ln2);

  const mp75 third = mp75(1) / 3;
  mp75 a = interp == Interpretation::Grouped ? mp75(pow(n * ln2, third))
                                             : mp75(n * pow(ln2, third));
  mp75 b = pow(ln_n_ln2, 2 * third);

  mp75 l = kScale * exp(kExponentCoeff * a * b);
  mp75 log2_n = log(n) / ln2;
  mp75 first = l * eps * eps / (6 * n * log2_n * m * m);
  mp75 second = 128 * n * m * m / (eps * eps) * (log(8 * n * m / eps) / ln2);
  mp75 t = first - second;

  PreciseEval out;
  out.ln_l = static_cast<double>(log(l));
  out.ln_first = static_cast<double>(log(first));
  out.ln_second = static_cast<double>(log(second));
  if (t == 0) {
    out.t_sign = 0;
    out.ln_t_abs = -std::numeric_limits<double>::infinity();
  } else {
    out.t_sign = t > 0 ? 1 : -1;
    out.ln_t_abs = static_cast<double>(log(abs(t)));
  }
  out.l_str = sci_string(l);
  out.first_str = sci_string(first);
  out.second_str = sci_string(second);
  out.t_max_str = sci_string(t);
  return out;
}

BoundReport evaluate(const SecurityQuery& query, Interpretation interp) {
  validate(query);

  BoundReport report;
  report.interpretation = interp;
  report.query = query;
  report.log_route = eval_log(query.n_bits, query.m_len, query.epsilon, interp);
  report.precise_route =
      eval_precise(query.n_bits, query.m_len, query.epsilon, interp);

  const RouteEval& lo = report.log_route;
  const PreciseEval& hi = report.precise_route;
  report.rel_gap_l = rel_gap(lo.ln_l, hi.ln_l);
  report.rel_gap_first = rel_gap(lo.ln_first, hi.ln_first);
  report.rel_gap_second = rel_gap(lo.ln_second, hi.ln_second);
  report.rel_gap_t = (lo.t_sign == hi.t_sign && lo.t_sign != 0)
                         ? rel_gap(lo.ln_t_abs, hi.ln_t_abs)
                         : std::numeric_limits<double>::quiet_NaN();

  const double ln10 = std::log(10.0);
  report.log10_l = hi.ln_l / ln10;
  report.t_sign = hi.t_sign;
  report.log10_t_abs = hi.ln_t_abs / ln10;
  report.time_success_ratio = query.attacker_cycles / query.epsilon;

  // secure iff t_max > 0 and T <= t_max, decided on the precise route.
  if (hi.t_sign <= 0) {
    report.secure = false;
  } else if (query.attacker_cycles == 0) {
    report.secure = true;
  } else {
    report.secure = std::log(query.attacker_cycles) <= hi.ln_t_abs;
  }
  return report;
}

}  // namespace wsnsec::bound
