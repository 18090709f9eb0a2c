#pragma once

#include <utility>
#include <vector>

namespace jladder {

/// Zeros of Z located by sign changes on (lower, upper].
struct ZeroList {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> ordinates;      ///< strictly increasing
  std::vector<double> bracket_width;  ///< final bracket width per zero
  std::vector<bool> refined;          ///< bracket_width < 1e-9
  /// Grid intervals where |Z| dipped without a sign change; each was
  /// subdivided once and any zeros found there are included above.
  std::vector<std::pair<double, double>> suspicious;
};

/// Grid step used by the scan: half the mean zero spacing at t,
/// 0.5 * 2 pi / ln(max(t, 50) / 2 pi).
double zero_scan_step(double t) noexcept;

/// Scan (lower, upper] for sign changes of Z and refine each one to a
/// bracket narrower than 1e-9. Work is split in chunks that may run in
/// parallel; the merged result does not depend on the thread count.
ZeroList find_zeros(double lower, double upper);
inline ZeroList find_zeros(double upper) { return find_zeros(0.0, upper); }

/// Concatenate two lists over adjacent ranges (a.upper == b.lower).
ZeroList merge(const ZeroList& a, const ZeroList& b);

/// Number of sign changes of Z in (0, t]. `lehmer_warning` is set when the
/// scan met an interval where two close zeros may have been missed.
long count_zeros(double t, bool* lehmer_warning = nullptr);

/// N(t) from a zero list covering t.
long zeros_up_to(const ZeroList& zeros, double t);

/// S(t) = N(t) - theta(t)/pi - 1, i.e. N(t) = theta(t)/pi + 1 + S(t).
/// Throws DomainError at a zero (|Z(t)| < 1e-12) or outside the list.
double s_function(double t, const ZeroList& zeros);

/// S_1(T) = int_0^T S(t) dt, integrated piece by piece between zeros.
double s1_function(double T, const ZeroList& zeros, double rel_tol = 1e-10);

/// Zero list plus prefix sums of S_1 at every zero, for repeated S and S_1
/// evaluation on [0, upper]. Immutable after construction.
class SelbergTable {
 public:
  explicit SelbergTable(double upper, double rel_tol = 1e-10);
  explicit SelbergTable(ZeroList zeros, double rel_tol = 1e-10);

  const ZeroList& zeros() const noexcept { return zeros_; }
  double upper() const noexcept { return zeros_.upper; }
  /// S(t); at a zero ordinate returns the right limit instead of throwing.
  double s(double t) const;
  double s1(double T) const;

 private:
  void build_prefix();

  ZeroList zeros_;
  double rel_tol_;
  std::vector<double> s1_at_zero_;  // S_1(gamma_j)
};

}  // namespace jladder
