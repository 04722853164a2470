#pragma once
// Exceptional classes in H_2(CP^2 # k):  pairing, the Cremona-orbit
// exceptionality test, form-vector reduction, bounded enumeration and
// minimal-area sets.

#include <optional>
#include <set>
#include <vector>

#include "sfh/exact.hpp"

namespace sfh {

// a*L - sum_i b_i E_i, so E_i itself has b_i = -1.
struct H2Class {
  Int a;
  IntVec b;

  int k() const { return int(b.size()); }
  static H2Class E(int i, int k);        // the i-th exceptional basis class
  static H2Class line(int k);
  bool operator==(const H2Class&) const = default;
  bool operator<(const H2Class& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

Int pairing(const H2Class& x, const H2Class& y);
H2Class canonical_class(int k);  // -3L + sum E_i

// Cohomology class (alpha; delta_1..delta_k) of a blowup form. Reduced:
// delta_1 >= ... >= delta_k > 0 and delta_1+delta_2+delta_3 <= alpha.
struct FormVector {
  Rat alpha;
  RatVec delta;

  int k() const { return int(delta.size()); }
  bool is_reduced() const;
  Rat volume2() const;  // alpha^2 - sum delta_i^2 (twice the volume)
  Rat area(const H2Class& x) const;
};

H2Class cremona_move(const H2Class& x, int i, int j, int l);
FormVector cremona_move(const FormVector& v, int i, int j, int l);

// x is exceptional iff x.x = -1, K.x = -1 and the greedy Cremona reduction
// (move at the three largest coefficients) reaches some E_i. The greedy
// walk strictly decreases the degree for genuine exceptional classes, so a
// non-decreasing step means "no"; the iteration guard only trips on inputs
// far outside the paper's k range and is reported, never guessed.
bool is_exceptional(const H2Class& x);

// Replayable reduction steps; pad/drop/sign steps only occur for inputs
// outside the symplectic cone.
struct FormMove {
  enum class Kind { Permute, Cremona, PadZero, DropZeros, FlipSign } kind;
  std::vector<int> perm;   // Permute
  int i = 0, j = 0, l = 0;  // Cremona
  int index = 0;           // FlipSign
  int count = 0;           // DropZeros
};
struct ReducedForm {
  FormVector form;
  std::vector<FormMove> log;
};
ReducedForm reduce_form(const FormVector& v);

// Replays a reduction log on a class; throws if a dropped coordinate is
// touched by the class.
H2Class transport(const H2Class& x, const std::vector<FormMove>& log);

// All exceptional classes with 0 < <v, x> <= bound. Completeness comes from
// positivity of the symplectic volume: for degree a >= 1 the area is at
// least alpha*a - sqrt((a^2+1) * sum delta^2), which grows without bound,
// and degrees a < 0 force a^2 + 1 < alpha^2 / (2 vol). Both cutoffs are
// evaluated exactly.
std::vector<std::pair<H2Class, Rat>> enumerate_exceptional(const FormVector& v,
                                                           const Rat& bound);

std::set<H2Class> emin_set(const FormVector& v);

}  // namespace sfh
