#include "momentkit/poly.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace momentkit {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::degree_overflow: return "degree overflow";
    case Errc::not_normalized: return "functional not normalized";
    case Errc::not_psd: return "matrix not positive semidefinite";
    case Errc::rank_deficient: return "rank deficient";
    case Errc::parse_error: return "parse error";
    case Errc::coverage: return "table coverage";
    case Errc::non_finite: return "non-finite value";
    case Errc::no_finite_bound: return "no finite bound";
  }
  return "unknown error";
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t var) {
  if (var >= dim) {
    throw Error(Errc::invalid_argument, "variable index out of range");
  }
  std::vector<unsigned> e(dim, 0);
  e[var] = 1;
  return MultiIndex(std::move(e));
}

unsigned MultiIndex::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dimension() != dimension()) {
    throw Error(Errc::dimension_mismatch, "multi-index lengths differ");
  }
  std::vector<unsigned> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::scaled(unsigned k) const {
  std::vector<unsigned> e(exps_);
  for (auto& x : e) x *= k;
  return MultiIndex(std::move(e));
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::min(a.dimension(), b.dimension());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.dimension() < b.dimension();
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void append_compositions(std::vector<unsigned>& prefix, std::size_t dim,
                         unsigned remaining, std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == dim) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    prefix.push_back(e);
    append_compositions(prefix, dim, remaining - e, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_monomials(std::size_t dim,
                                            unsigned max_degree) {
  if (dim == 0) {
    throw Error(Errc::invalid_argument, "dimension must be >= 1");
  }
  std::vector<MultiIndex> out;
  out.reserve(binomial(max_degree + dim, dim));
  std::vector<unsigned> prefix;
  for (unsigned k = 0; k <= max_degree; ++k) {
    append_compositions(prefix, dim, k, out);
  }
  return out;
}

std::size_t graded_lex_rank(const MultiIndex& index) {
  const std::size_t d = index.dimension();
  const unsigned k = index.degree();
  std::size_t rank = k == 0 ? 0 : binomial(k - 1 + d, d);
  unsigned rem = k;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    // Indices agreeing on the first i exponents but larger at i come first.
    const std::size_t tail = d - i - 1;
    for (unsigned e = index[i] + 1; e <= rem; ++e) {
      rank += binomial(rem - e + tail - 1, tail - 1);
    }
    rem -= index[i];
  }
  return rank;
}

std::vector<std::string> default_variable_names(std::size_t dim) {
  switch (dim) {
    case 1: return {"t"};
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    default: break;
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse_error, "polynomial \"" + std::string(text_) +
                                       "\" at offset " + std::to_string(pos_) +
                                       ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      unsigned k = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                       text_.data() + text_.size(), k);
      if (ec != std::errc()) fail("exponent must be a nonnegative integer");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return pow(base, k);
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                       text_.data() + text_.size(), value);
      if (ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return Polynomial::constant(vars_.size(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> variables) {
  if (variables.empty()) {
    throw Error(Errc::invalid_argument, "no variables declared");
  }
  return Parser(text, variables).parse();
}

std::string to_string(const Polynomial& p,
                      std::span<const std::string> variables) {
  if (variables.size() != p.dimension()) {
    throw Error(Errc::dimension_mismatch, "variable name count mismatch");
  }
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : p.terms()) {
    double mag = c;
    if (first) {
      if (c < 0) {
        out += "-";
        mag = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      mag = std::fabs(c);
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < idx.dimension(); ++v) {
      if (idx[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables[v];
      if (idx[v] > 1) mono += "^" + std::to_string(idx[v]);
    }
    if (mono.empty()) {
      out += format_number(mag);
    } else if (mag == 1.0) {
      out += mono;
    } else {
      out += format_number(mag) + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  const auto names = default_variable_names(p.dimension());
  return to_string(p, names);
}

}  // namespace momentkit
