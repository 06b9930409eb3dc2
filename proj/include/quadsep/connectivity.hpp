#pragma once

#include <optional>
#include <vector>

#include "quadsep/quadratic.hpp"

namespace quadsep {

enum class Target { STRICT_SUBLEVEL, SUBLEVEL, LEVEL };
const char* to_string(Target t);

/// Which side of the canonical first coordinate a witness point lies on.
enum class Side { MINUS, PLUS };
const char* to_string(Side s);

struct Witness {
  Vector point;
  Side side = Side::PLUS;
  double value = 0.0;  // f at the point
};

/// Component count (0, 1 or 2) of one of {f<0}, {f<=0}, {f=0}, with a
/// point on each component.  For count 2 the witnesses carry opposite
/// canonical-x1 signs, MINUS listed first.
struct ComponentReport {
  Target target = Target::LEVEL;
  int count = 0;
  std::vector<Witness> witnesses;
  std::optional<AffineChange> basis_note;
};

ComponentReport components_strict_sublevel(const QuadraticFunction& f,
                                           const Tolerances& t);
ComponentReport components_sublevel(const QuadraticFunction& f,
                                    const Tolerances& t);
ComponentReport components_level(const QuadraticFunction& f,
                                 const Tolerances& t);

/// The canonical frame in which {f=0} splits into two sheets by the sign of
/// the first coordinate: the canonical form of f or of -f when either is
/// -z1^2 + delta(z2^2+...+zm^2) + 1, absent when {f=0} is connected or
/// empty.  Witness tagging and level-set sampling share this frame.
std::optional<CanonicalForm> two_sheet_frame(const QuadraticFunction& f,
                                             const Tolerances& t);

}  // namespace quadsep
