// format.hpp
//
// Locale-independent number formatting shared by the CSV/JSON writers and the
// command-line tool.

#ifndef TF_FORMAT_HPP
#define TF_FORMAT_HPP

#include <string>

namespace tf {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double v);

/// Fixed-point with `decimals` digits after the point, correctly rounded from
/// the exact binary value.
std::string format_fixed(double v, int decimals);

} // namespace tf

#endif
