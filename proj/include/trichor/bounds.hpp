#pragma once

// Per-n exponential bases of related counting problems, derived from a bound
// on the number of triangulations.

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "trichor/errors.hpp"
#include "trichor/numeric.hpp"

namespace trichor {

enum class Quantity { tr, sc, pg_cg, st, cf };

inline const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::tr: return "tr";
    case Quantity::sc: return "sc";
    case Quantity::pg_cg: return "pg_cg";
    case Quantity::st: return "st";
    case Quantity::cf: return "cf";
  }
  return "?";
}

struct BoundEntry {
  Quantity quantity = Quantity::tr;
  Rational base = 1;
  Rational multiplier = 1;
  std::string description;
  std::string provenance;
};

/// Multipliers are exact: 2.3403 = 23403/10^4 and 7.98 = 798/10^2 are taken as
/// decimal fractions, 16/3 and 27/4 as written.
inline std::vector<BoundEntry> derived_bounds(const Rational& tr_base) {
  if (tr_base < 1) throw OutOfRange("triangulation base must be at least 1");
  const std::vector<std::tuple<Quantity, Rational, const char*, const char*>> rows{
      {Quantity::tr, Rational(1), "triangulations", "input"},
      {Quantity::sc, Rational(23403, 10000), "crossing-free spanning cycles", "2.3403 = 30^(1/4) rounded"},
      {Quantity::pg_cg, Rational(798, 100), "crossing-free graphs", "7.98"},
      {Quantity::st, Rational(16, 3), "crossing-free spanning trees", "5 1/3"},
      {Quantity::cf, Rational(27, 4), "crossing-free cycle-free graphs", "6.75"},
  };
  std::vector<BoundEntry> out;
  for (const auto& [q, mult, what, why] : rows) out.push_back({q, tr_base * mult, mult, what, why});
  return out;
}

/// Base with trailing zeros dropped; the spanning-cycle row is an upper
/// estimate, so it is rounded up to two decimals and shown with "<=".
inline std::string render_base(const BoundEntry& e) {
  if (e.quantity == Quantity::sc) {
    std::string exact;
    if (exact_decimal(e.base, exact) && exact.size() - exact.find('.') <= 3) return exact;
    return "<=" + to_decimal_ceil(e.base, 2);
  }
  std::string exact;
  if (exact_decimal(e.base, exact)) return exact;
  return to_mixed(e.base);
}

/// Spanning-cycle base with the multiplier taken as 30^(1/4) instead of its
/// decimal literal, to 6 decimals.
inline std::string symbolic_sc(const Rational& tr_base) {
  const double v = to_double(tr_base) * std::pow(30.0, 0.25);
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundEntry>& rows) {
  os << "quantity,description,multiplier,base\n";
  for (const auto& r : rows) {
    std::string mult;
    if (!exact_decimal(r.multiplier, mult)) mult = to_mixed(r.multiplier);
    os << quantity_name(r.quantity) << ',' << r.description << ',' << mult << ',' << render_base(r) << '\n';
  }
}

}  // namespace trichor
