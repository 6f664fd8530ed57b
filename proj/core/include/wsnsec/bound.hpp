#pragma once

#include <string>

namespace wsnsec::bound {

// The published L(N) expression is typographically ambiguous, so both
// readings are implemented. Literal: A = n * cbrt(ln 2). Grouped:
// A = cbrt(n * ln 2). B = (ln(n * ln 2))^(2/3) either way.
enum class Interpretation { Grouped, Literal };

/// Default interpretation: the one under which the 900-bit case study
/// ((T,eps) = (1e12, 0.2), M = 100) comes out secure. Pinned empirically
/// during golden-value derivation; see the generated report text.
inline constexpr Interpretation kDefaultInterpretation = Interpretation::Literal;

std::string to_string(Interpretation interp);
Interpretation interpretation_from_string(const std::string& text);

struct SecurityQuery {
  unsigned n_bits = 900;         // modulus bit length N
  double m_len = 100.0;          // generator output length M
  double epsilon = 0.2;          // distinguishing bound
  double attacker_cycles = 1e12; // attacker budget T
};

/// Throws std::invalid_argument when the query violates its invariants
/// (n_bits >= 2, m_len >= 1, 0 < epsilon < 1, attacker_cycles >= 0).
void validate(const SecurityQuery& query);

/// One evaluation route. Values routinely overflow double (L(900) under the
/// literal reading is ~1e2298), so magnitudes are carried as natural logs
/// plus a sign for t_max = first_term - second_term.
struct RouteEval {
  double ln_l = 0;       // ln L(N)
  double ln_first = 0;   // ln of L / (6 N log2(N) eps^-2 M^2)
  double ln_second = 0;  // ln of 2^7 N eps^-2 M^2 log2(8 N eps^-1 M)
  int t_sign = 0;        // sign of t_max
  double ln_t_abs = 0;   // ln |t_max|; -inf when t_max == 0
};

/// Route 1: IEEE double arithmetic kept in the log domain throughout.
RouteEval eval_log(unsigned n_bits, double m_len, double epsilon,
                   Interpretation interp);

/// Route 2: direct evaluation with 75-significant-digit floating point
/// (decimal constants parsed at full precision), logs taken at the end.
/// `*_str` fields are 25-digit scientific decimals of the actual values.
struct PreciseEval : RouteEval {
  std::string l_str;
  std::string first_str;
  std::string second_str;
  std::string t_max_str;
};
PreciseEval eval_precise(unsigned n_bits, double m_len, double epsilon,
                         Interpretation interp);

struct BoundReport {
  Interpretation interpretation = kDefaultInterpretation;
  SecurityQuery query;
  RouteEval log_route;
  PreciseEval precise_route;
  // Relative disagreement between the two routes on the value scale,
  // |exp(ln_a - ln_b) - 1|. rel_gap_t is NaN when the routes disagree on the
  // sign of t_max or when t_max is zero in either.
  double rel_gap_l = 0;
  double rel_gap_first = 0;
  double rel_gap_second = 0;
  double rel_gap_t = 0;
  // Verdict from the extended-precision route: secure iff t_max > 0 and
  // attacker_cycles <= t_max. Negative t_max is reported as-is, never
  // clamped.
  bool secure = false;
  double time_success_ratio = 0;  // T / eps
  double log10_l = 0;             // log10 of L (precise route)
  int t_sign = 0;
  double log10_t_abs = 0;         // log10 |t_max| (precise route)
};

BoundReport evaluate(const SecurityQuery& query, Interpretation interp);

}  // namespace wsnsec::bound
