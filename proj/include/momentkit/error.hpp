#pragma once

#include <stdexcept>
#include <string>

namespace momentkit {

// Numeric values match the MK_ERR_* codes of the C interface.
enum class Errc {
  invalid_argument = 1,
  dimension_mismatch = 2,
  degree_overflow = 3,
  not_normalized = 4,
  not_psd = 5,
  rank_deficient = 6,
  parse_error = 7,
  coverage = 8,
  non_finite = 9,
  no_finite_bound = 10,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Thrown by quadrature_from_moments when the moment data cannot support the
// requested node count; achievable() is the largest count that it can.
class RankDeficiency : public Error {
 public:
  RankDeficiency(unsigned achievable, const std::string& what)
      : Error(Errc::rank_deficient, what), achievable_(achievable) {}

  unsigned achievable() const noexcept { return achievable_; }

 private:
  unsigned achievable_;
};

}  // namespace momentkit
