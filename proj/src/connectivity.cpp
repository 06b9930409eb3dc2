#include "quadsep/connectivity.hpp"

#include <cmath>

#include "quadsep/errors.hpp"

namespace quadsep {

const char* to_string(Target t) {
  switch (t) {
    case Target::STRICT_SUBLEVEL: return "STRICT_SUBLEVEL";
    case Target::SUBLEVEL: return "SUBLEVEL";
    case Target::LEVEL: return "LEVEL";
  }
  return "?";
}

const char* to_string(Side s) {
  return s == Side::MINUS ? "MINUS" : "PLUS";
}

namespace {

Side side_of(double canonical_x1) {
  return canonical_x1 < 0.0 ? Side::MINUS : Side::PLUS;
}

/// Pulls a canonical point back and, for inequality targets, pushes the
/// driving coordinate outward until the pulled-back value satisfies the
/// relation (guards against pullback roundoff on extreme scales).
Witness pull_back_witness(const QuadraticFunction& f, const CanonicalForm& cf,
                          Vector z, std::size_t drive, bool strict,
                          const Tolerances& t) {
  const double slack = t.tol_abs * std::max(1.0, f.coefficient_scale());
  Vector x = cf.change.from_canonical(z);
  double v = evaluate(f, x);
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (strict ? (v < 0.0) : (v <= slack)) break;
    if (z[drive] == 0.0) break;
    z[drive] *= 2.0;
    x = cf.change.from_canonical(z);
    v = evaluate(f, x);
  }
  return Witness{x, side_of(z[0]), v};
}

/// Canonical point with f < 0 (or <= 0); valid for every form whose
/// negative region is non-empty.
void fill_negative_witness(ComponentReport& rep, const QuadraticFunction& f,
                           const CanonicalForm& cf, const Tolerances& t) {
  Vector z(cf.dim, 0.0);
  std::size_t drive = 0;
  switch (cf.form_id) {
    case FormId::F1:
    case FormId::F2:
    case FormId::F3:
      z[0] = 2.0;
      break;
    case FormId::F4:
      if (cf.delta == 1) {
        drive = static_cast<std::size_t>(cf.m);
        z[drive] = -cf.cprime - 1.0;
      }
      // delta == 0: the minimum value c' is attained at the origin.
      break;
    case FormId::F5:
      z[0] = -cf.cprime - 1.0;
      break;
  }
  rep.witnesses.push_back(pull_back_witness(f, cf, z, drive, true, t));
}

Witness level_witness(const QuadraticFunction& f, const CanonicalForm& cf,
                      const Tolerances& t) {
  Vector z(cf.dim, 0.0);
  const double cth = constant_threshold(f, t);
  switch (cf.form_id) {
    case FormId::F1:
      if (cf.theta == 1) z[0] = 1.0;
      break;
    case FormId::F2:
      z[static_cast<std::size_t>(cf.k)] = 1.0;  // delta = 1 here, else empty
      break;
    case FormId::F3:
      break;  // z = 0 lies on the set
    case FormId::F4:
      if (cf.delta == 1)
        z[static_cast<std::size_t>(cf.m)] = -cf.cprime;
      else if (cf.cprime < -cth)
        z[0] = std::sqrt(-cf.cprime);
      break;
    case FormId::F5:
      z[0] = -cf.cprime;
      break;
  }
  const Vector x = cf.change.from_canonical(z);
  return Witness{x, side_of(z[0]), evaluate(f, x)};
}

void require_non_constant(const QuadraticFunction& f, const Tolerances& t) {
  if (is_constant(f, t))
    throw InputError("component counting requires a non-constant function");
}

}  // namespace

std::optional<CanonicalForm> two_sheet_frame(const QuadraticFunction& f,
                                             const Tolerances& t) {
  require_non_constant(f, t);
  const auto vstar = critical_value(f, t);
  if (!vstar) return std::nullopt;

  const double cth = constant_threshold(f, t);
  const InertiaReport in = inertia(f.A, t);

  const QuadraticFunction* candidate = nullptr;
  QuadraticFunction neg;
  if (in.n_neg == 1 && *vstar > cth) {
    candidate = &f;
  } else if (in.n_pos == 1 && *vstar < -cth) {
    neg = f.negated();
    candidate = &neg;
  }
  if (candidate == nullptr) return std::nullopt;

  CanonicalForm cf = canonical_form(*candidate, t);
  if (!(cf.form_id == FormId::F1 && cf.k == 1 && cf.theta == 1))
    throw InternalError(
        "inertia classified a two-sheet level set but the canonical form "
        "disagrees");
  return cf;
}

ComponentReport components_strict_sublevel(const QuadraticFunction& f,
                                           const Tolerances& t) {
  require_non_constant(f, t);
  const CanonicalForm cf = canonical_form(f, t);
  const double cth = constant_threshold(f, t);

  ComponentReport rep;
  rep.target = Target::STRICT_SUBLEVEL;
  rep.basis_note = cf.change;

  if (cf.form_id == FormId::F4 && cf.delta == 0 && cf.cprime > -cth) {
    rep.count = 0;  // f = sum of squares + c' with c' >= 0
    return rep;
  }
  if (cf.form_id == FormId::F1 && cf.k == 1) {
    rep.count = 2;
    for (int sgn : {-1, +1}) {
      Vector z(cf.dim, 0.0);
      z[0] = 2.0 * sgn;
      rep.witnesses.push_back(pull_back_witness(f, cf, z, 0, true, t));
    }
    return rep;
  }
  rep.count = 1;
  fill_negative_witness(rep, f, cf, t);
  return rep;
}

ComponentReport components_sublevel(const QuadraticFunction& f,
                                    const Tolerances& t) {
  require_non_constant(f, t);
  const CanonicalForm cf = canonical_form(f, t);
  const double cth = constant_threshold(f, t);

  ComponentReport rep;
  rep.target = Target::SUBLEVEL;
  rep.basis_note = cf.change;

  if (cf.form_id == FormId::F4 && cf.delta == 0 && cf.cprime > cth) {
    rep.count = 0;
    return rep;
  }
  if (cf.form_id == FormId::F1 && cf.k == 1 && cf.theta == 1) {
    rep.count = 2;
    for (int sgn : {-1, +1}) {
      Vector z(cf.dim, 0.0);
      z[0] = 2.0 * sgn;
      rep.witnesses.push_back(pull_back_witness(f, cf, z, 0, false, t));
    }
    return rep;
  }
  rep.count = 1;
  if (cf.form_id == FormId::F4 && cf.delta == 0) {
    // Minimum c' <= cth is attained at the canonical origin.
    const Vector x = cf.change.from_canonical(Vector(cf.dim, 0.0));
    rep.witnesses.push_back(Witness{x, Side::PLUS, evaluate(f, x)});
  } else {
    fill_negative_witness(rep, f, cf, t);
  }
  return rep;
}

ComponentReport components_level(const QuadraticFunction& f,
                                 const Tolerances& t) {
  require_non_constant(f, t);

  ComponentReport rep;
  rep.target = Target::LEVEL;

  if (const auto frame = two_sheet_frame(f, t)) {
    rep.count = 2;
    rep.basis_note = frame->change;
    for (int sgn : {-1, +1}) {
      Vector z(frame->dim, 0.0);
      z[0] = sgn;
      const Vector x = frame->change.from_canonical(z);
      rep.witnesses.push_back(Witness{x, side_of(z[0]), evaluate(f, x)});
    }
    return rep;
  }

  const CanonicalForm cf = canonical_form(f, t);
  rep.basis_note = cf.change;
  const double cth = constant_threshold(f, t);
  const bool empty =
      (cf.form_id == FormId::F2 && cf.delta == 0) ||
      (cf.form_id == FormId::F4 && cf.delta == 0 && cf.cprime > cth);
  if (empty) {
    rep.count = 0;
    return rep;
  }
  rep.count = 1;
  rep.witnesses.push_back(level_witness(f, cf, t));
  return rep;
}

}  // namespace quadsep
