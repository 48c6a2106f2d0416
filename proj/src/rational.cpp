#include "ergo/rational.hpp"

#include <cctype>

#include "ergo/error.hpp"

namespace ergo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIncompleteTable: return "incomplete-table";
    case ErrorKind::kDuplicate: return "duplicate";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kNotUnique: return "not-unique";
    case ErrorKind::kNotImplemented: return "not-implemented";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kInvariant: return "invariant";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kIncompleteTable:
    case ErrorKind::kDuplicate:
    case ErrorKind::kInvalidInput:
      return 2;
    case ErrorKind::kPrecondition:
    case ErrorKind::kNotUnique:
    case ErrorKind::kNotImplemented:
    case ErrorKind::kNumeric:
      return 3;
    case ErrorKind::kInvariant:
      return 4;
  }
  return 4;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorKind::kParse,
              "not a rational literal: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad_literal(text);
    value = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_literal(text);
    if (!whole.empty() && !all_digits(whole)) bad_literal(text);
    if (!frac.empty() && !all_digits(frac)) bad_literal(text);
    mpz_class n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    value = Rational(n, d);
  } else {
    if (!all_digits(body)) bad_literal(text);
    value = Rational(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

bool exact_root(const Rational& value, unsigned degree, Rational& out) {
  if (degree == 0) return false;
  if (value < 0 && degree % 2 == 0) return false;
  mpz_class n, d;
  const bool n_exact =
      mpz_root(n.get_mpz_t(), value.get_num().get_mpz_t(), degree) != 0;
  const bool d_exact =
      mpz_root(d.get_mpz_t(), value.get_den().get_mpz_t(), degree) != 0;
  if (!n_exact || !d_exact) return false;
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace ergo
