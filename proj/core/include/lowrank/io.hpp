#pragma once

#include "lowrank/matrix.hpp"
#include "lowrank/multiset.hpp"
#include "lowrank/weyr.hpp"

#include <iosfwd>
#include <string>

namespace lowrank {

// Text formats. Tokens are whitespace separated; '#' starts a comment that
// runs to the end of the line. Non-finite numbers are rejected. All readers
// throw Error(ParseError) with the offending position.
//
//   matrix:   "rows cols", then rows * cols entries "re im" in row-major order
//   multiset: one "re im count" triple per entry
//   weyr:     one "re im i eta" quadruple per table entry, i >= 1

ComplexMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const ComplexMatrix& a);

ComplexMultiset read_multiset(std::istream& in, double merge_tol);
void write_multiset(std::ostream& out, const ComplexMultiset& m);

WeyrChar read_weyr(std::istream& in);
void write_weyr(std::ostream& out, const WeyrChar& w);

ComplexMatrix load_matrix(const std::string& path);
ComplexMultiset load_multiset(const std::string& path, double merge_tol);
WeyrChar load_weyr(const std::string& path);

/// Shortest round-tripping decimal form ("%.17g").
std::string format_double(double x);

}  // namespace lowrank
