#include "mpctrf/rational.hpp"

#include <cctype>

#include "mpctrf/errors.hpp"

namespace mpctrf {

namespace {

bool valid_integer_token(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!valid_integer_token(text)) {
        fail(ErrorKind::Parse, "not a rational: '" + text + "'");
      }
      return Rat(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den)) {
      fail(ErrorKind::Parse, "not a rational: '" + text + "'");
    }
    Int q(den);
    if (q == 0) {
      fail(ErrorKind::Parse, "zero denominator in '" + text + "'");
    }
    return Rat(Int(num), q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, "not a rational: '" + text + "' (" + e.what() + ")");
  }
}

std::string rat_to_string(const Rat& r) {
  if (is_integral(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string int_to_string(const Int& v) { return v.str(); }

Int to_int(const Rat& r) {
  if (!is_integral(r)) {
    fail(ErrorKind::Internal, "to_int on non-integral " + rat_to_string(r));
  }
  return numerator(r);
}

}  // namespace mpctrf
