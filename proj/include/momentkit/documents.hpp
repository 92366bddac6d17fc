#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "momentkit/moments.hpp"
#include "momentkit/semigroup.hpp"

// JSON documents exchanged through files:
//
//   moment sequence  {"dimension": d, "max_degree": 2N,
//                     "moments": [{"index": [..], "value": v}, ...]}
//   measure          {"atoms": [{"point": [..], "weight": w}, ...]}
//                 or {"box": {"bounds": [[lo, hi], ...], "order": q}}
//   complex moments  {"max_level": M,
//                     "values": [{"m": .., "n": .., "re": .., "im": ..}, ...]}
//   complex atoms    {"max_level": M (optional),
//                     "atoms": [{"re": .., "im": .., "weight": w}, ...]}
//   operator         {"matrix": [[..], ..], "vector": [..]}
//
// Malformed input throws Error with Errc::parse_error.
namespace momentkit {

MomentSequence parse_moment_document(std::string_view text);
// Values are written as stored (after normalization); `normalized` and
// `original_mass` are informational extras.
std::string write_moment_document(const MomentSequence& moments);

MeasureSpec parse_measure_document(std::string_view text);

ComplexMomentFunction parse_complex_moment_document(std::string_view text);
std::string write_complex_moment_document(const ComplexMomentFunction& f);

struct ComplexAtomDocument {
  std::vector<ComplexAtom> atoms;
  int max_level = -1;  // -1 when absent
};
ComplexAtomDocument parse_complex_atoms_document(std::string_view text);

struct OperatorDocument {
  SymMatrix op;
  std::vector<double> h;
};
OperatorDocument parse_operator_document(std::string_view text);

}  // namespace momentkit
