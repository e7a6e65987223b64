#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace leonard {

using Cplx = std::complex<double>;
using CplxL = std::complex<long double>;

// Operator labels of the triple, in cyclic order A -> A* -> A<> -> A.
enum class Label { A = 0, AStar = 1, ADiam = 2 };

inline Label succ(Label l) { return static_cast<Label>((static_cast<int>(l) + 1) % 3); }
inline Label pred(Label l) { return static_cast<Label>((static_cast<int>(l) + 2) % 3); }
inline Label remaining(Label a, Label b) {
  return static_cast<Label>(3 - static_cast<int>(a) - static_cast<int>(b));
}
inline const char* label_name(Label l) {
  switch (l) {
    case Label::A: return "A";
    case Label::AStar: return "A*";
    default: return "A<>";
  }
}

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error { using Error::Error; };
struct DegenerateParams : Error { using Error::Error; };
struct SingularSeries : Error { using Error::Error; };
struct SolverFailure : Error { using Error::Error; };
struct AmbiguousSolution : Error { using Error::Error; };
struct NoMatchingLevel : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct InterpolationDegenerate : Error { using Error::Error; };
struct RootExtractionFailure : Error { using Error::Error; };
struct RankDeficiencyUnexpected : Error { using Error::Error; };
struct SpinMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace leonard
