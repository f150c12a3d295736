// Basic shared utilities: 3-vectors, exact rationals, error types, logging.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sphquad {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// All recoverable, input-dependent failures derive from Error so the CLI can
// map them to exit code 2. Logic bugs use assertions / std::logic_error.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidNet : Error {
  explicit InvalidNet(const std::string& what) : Error("invalid net: " + what) {}
};
struct InfeasibleParameter : Error {
  explicit InfeasibleParameter(const std::string& what)
      : Error("infeasible parameter: " + what) {}
};
struct DirectionBlocked : Error {
  explicit DirectionBlocked(const std::string& what)
      : Error("direction blocked: " + what) {}
};
struct QuadrupleBoundary : Error {
  explicit QuadrupleBoundary(const std::string& what)
      : Error("quadruple-intersection boundary: " + what) {}
};
struct ForbiddenSide : Error {
  explicit ForbiddenSide(const std::string& what)
      : Error("forbidden side: " + what) {}
};
struct UnknownLabel : Error {
  explicit UnknownLabel(const std::string& what) : Error("unknown label: " + what) {}
};
struct ParallelCircles : Error {
  explicit ParallelCircles(const std::string& what) : Error("parallel circles: " + what) {}
};
struct InfeasibleAngles : InfeasibleParameter {
  explicit InfeasibleAngles(const std::string& what) : InfeasibleParameter(what) {}
};
struct DegenerateConfig : Error {
  explicit DegenerateConfig(const std::string& what) : Error("degenerate config: " + what) {}
};
struct SideTooLong : Error {
  explicit SideTooLong(const std::string& what) : Error("side too long: " + what) {}
};
struct NotOrderZero : Error {
  explicit NotOrderZero(const std::string& what) : Error("corner not of order zero: " + what) {}
};
struct NoEligibleFace : Error {
  explicit NoEligibleFace(const std::string& what) : Error("no eligible face: " + what) {}
};
struct LongSide : Error {
  explicit LongSide(const std::string& what) : Error("long side: " + what) {}
};
struct UnknownVariant : Error {
  explicit UnknownVariant(const std::string& what) : Error("unknown variant: " + what) {}
};
struct BoundaryTie : Error {
  explicit BoundaryTie(const std::string& what) : Error("boundary tie: " + what) {}
};
struct AmbiguousOnBoundary : Error {
  explicit AmbiguousOnBoundary(const std::string& what)
      : Error("ambiguous on boundary: " + what) {}
};
struct TargetInfeasible : Error {
  explicit TargetInfeasible(const std::string& what)
      : Error("transition target infeasible: " + what) {}
};
struct UncataloguedLabel : Error {
  explicit UncataloguedLabel(const std::string& what)
      : Error("label outside the implemented diagrams: " + what) {}
};

// ---------------------------------------------------------------------------
// Logging (controlled by SPHQUAD_LOG=debug|info|warn|error, default warn)
// ---------------------------------------------------------------------------

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3 };

inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("SPHQUAD_LOG");
    if (!env) return LogLevel::Warn;
    std::string s(env);
    if (s == "debug") return LogLevel::Debug;
    if (s == "info") return LogLevel::Info;
    if (s == "error") return LogLevel::Error;
    return LogLevel::Warn;
  }();
  return level;
}

inline void log(LogLevel lvl, const std::string& msg) {
  static const char* names[] = {"debug", "info", "warn", "error"};
  if (static_cast<int>(lvl) >= static_cast<int>(log_level()))
    std::cerr << "[sphquad:" << names[static_cast<int>(lvl)] << "] " << msg << "\n";
}

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  if (n < 1e-300) throw Error("cannot normalize near-zero vector");
  return a / n;
}
inline double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Rational (exact arithmetic for strict inequality decisions on angles)
// ---------------------------------------------------------------------------

// Minimal normalized rational over 64-bit integers. Angle data entered as p/q
// has tiny denominators, and the angle engine only ever adds a handful of
// terms, so 64 bits (with a checked multiply) is plenty.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw Error("rational overflow");
    return static_cast<std::int64_t>(p);
  }

  Rat operator+(const Rat& o) const {
    return Rat(checked_mul(num, o.den) + checked_mul(o.num, den), checked_mul(den, o.den));
  }
  Rat operator-(const Rat& o) const {
    return Rat(checked_mul(num, o.den) - checked_mul(o.num, den), checked_mul(den, o.den));
  }
  Rat operator*(const Rat& o) const {
    return Rat(checked_mul(num, o.num), checked_mul(den, o.den));
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw Error("rational division by zero");
    return Rat(checked_mul(num, o.den), checked_mul(den, o.num));
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Floor as integer (used to split an angle into order + fractional part).
  std::int64_t floor() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  std::string str() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
  }
};

// Parse "p/q" or a plain integer; used by the CLI's --exact mode.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s), 1);
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error("cannot parse rational '" + s + "'");
  }
}

// Helpers shared by the templated angle engine: minimal glue so algorithms can
// be written once for double (numeric mode) and Rat (exact mode).
inline double to_double(double x) { return x; }
inline double to_double(const Rat& x) { return x.to_double(); }
inline std::int64_t floor_int(double x) { return static_cast<std::int64_t>(std::floor(x)); }
inline std::int64_t floor_int(const Rat& x) { return x.floor(); }
inline std::string scalar_str(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}
inline std::string scalar_str(const Rat& x) { return x.str(); }

}  // namespace sphquad
