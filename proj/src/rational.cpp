#include "fairsp/rational.hpp"

#include <limits>
#include <numeric>

#include "fairsp/errors.hpp"

namespace fairsp {

namespace {

using i128 = __int128;

long long narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    raise(ErrorCode::Internal, std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat::Rat(long long num, long long den) {
  if (den == 0) raise(ErrorCode::ParseError, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rat Rat::parse(const std::string& text) {
  if (text.empty()) raise(ErrorCode::ParseError, "empty rational");
  auto slash = text.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      long long v = std::stoll(text, &used);
      if (used != text.size()) raise(ErrorCode::ParseError, "bad rational: " + text);
      return Rat(v);
    }
    long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) raise(ErrorCode::ParseError, "bad rational: " + text);
    std::string den_part = text.substr(slash + 1);
    long long q = std::stoll(den_part, &used);
    if (used != den_part.size()) raise(ErrorCode::ParseError, "bad rational: " + text);
    if (q == 0) raise(ErrorCode::ParseError, "zero denominator in: " + text);
    return Rat(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    raise(ErrorCode::ParseError, "bad rational: " + text);
  }
}

Rat Rat::operator+(const Rat& o) const {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num_ = narrow(n, "add");
  r.den_ = narrow(d, "add");
  return r;
}

Rat Rat::operator-(const Rat& o) const { return *this + Rat(-o.num_, o.den_); }

Rat Rat::operator*(const Rat& o) const {
  i128 n = i128(num_) * o.num_;
  i128 d = i128(den_) * o.den_;
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num_ = narrow(n, "mul");
  r.den_ = narrow(d, "mul");
  return r;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) raise(ErrorCode::Internal, "division by zero rational");
  return *this * Rat(o.den_, o.num_);
}

bool Rat::operator<(const Rat& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotSinglePeaked: return "NotSinglePeaked";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::MissingBallot: return "MissingBallot";
    case ErrorCode::InvalidBallotFamily: return "InvalidBallotFamily";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::MixedComponentKinds: return "MixedComponentKinds";
    case ErrorCode::RequiresSingleGroup: return "RequiresSingleGroup";
    case ErrorCode::RequiresSingletonGroups: return "RequiresSingletonGroups";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NonCompliantScenario: return "NonCompliantScenario";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotTopContaining: return "NotTopContaining";
    case ErrorCode::InvalidOffset: return "InvalidOffset";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InconsistentInstance: return "InconsistentInstance";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace fairsp
