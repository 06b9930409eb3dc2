#include "quadsep/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "quadsep/errors.hpp"

namespace quadsep {

namespace {

using nlohmann::json;

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number())
    throw InputError("problem file: " + where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw InputError("problem file: " + where + " is not finite");
  return v;
}

Vector number_array(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    throw InputError("problem file: " + where + " must be an array of " +
                     std::to_string(n) + " numbers");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = finite_number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

QuadraticFunction parse_quadratic(const json& j, std::size_t n,
                                  const std::string& name,
                                  const Tolerances& t,
                                  std::vector<std::string>& warnings) {
  if (!j.is_object())
    throw InputError("problem file: " + name + " must be an object");
  if (!j.contains("A") || !j.contains("a") || !j.contains("a0"))
    throw InputError("problem file: " + name + " needs fields A, a, a0");

  const json& ja = j.at("A");
  if (!ja.is_array() || ja.size() != n)
    throw InputError("problem file: " + name + ".A must be " +
                     std::to_string(n) + " rows");
  Matrix raw(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector row = number_array(
        ja[i], n, name + ".A[" + std::to_string(i) + "]");
    for (std::size_t cidx = 0; cidx < n; ++cidx) raw(i, cidx) = row[cidx];
  }

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t cidx = i + 1; cidx < n; ++cidx)
      asym = std::max(asym, std::abs(raw(i, cidx) - raw(cidx, i)));
  if (asym > t.tol_rel * std::max(1.0, raw.max_abs()) + t.tol_abs)
    warnings.push_back(name + ".A was not symmetric (max skew " +
                       std::to_string(asym) + "); symmetrized");

  QuadraticFunction q;
  q.A = SymMatrix::from_matrix(raw);
  q.a = number_array(j.at("a"), n, name + ".a");
  q.a0 = finite_number(j.at("a0"), name + ".a0");
  return q;
}

ProblemFile from_json(const json& j) {
  if (!j.is_object()) throw InputError("problem file: top level must be an object");
  if (!j.contains("n") || !j.at("n").is_number_unsigned())
    throw InputError("problem file: n must be a positive integer");
  const std::size_t n = j.at("n").get<std::size_t>();
  if (n == 0) throw InputError("problem file: n must be at least 1");

  ProblemFile p;
  p.n = n;

  if (j.contains("tolerances") && !j.at("tolerances").is_null()) {
    const json& jt = j.at("tolerances");
    if (!jt.is_object())
      throw InputError("problem file: tolerances must be an object");
    double rel = jt.contains("tol_rel")
                     ? finite_number(jt.at("tol_rel"), "tolerances.tol_rel")
                     : Tolerances().tol_rel;
    double abs = jt.contains("tol_abs")
                     ? finite_number(jt.at("tol_abs"), "tolerances.tol_abs")
                     : Tolerances().tol_abs;
    if (!(rel > 0.0) || !(abs > 0.0))
      throw InputError("problem file: tolerances must be strictly positive");
    p.tolerances = Tolerances(rel, abs);
  }

  if (!j.contains("f"))
    throw InputError("problem file: missing function f");
  p.f = parse_quadratic(j.at("f"), n, "f", p.tolerances, p.warnings);
  if (j.contains("g") && !j.at("g").is_null())
    p.g = parse_quadratic(j.at("g"), n, "g", p.tolerances, p.warnings);
  return p;
}

json quadratic_to_json(const QuadraticFunction& q) {
  json ja = json::array();
  for (std::size_t i = 0; i < q.dim(); ++i) {
    json row = json::array();
    for (std::size_t cidx = 0; cidx < q.dim(); ++cidx)
      row.push_back(q.A(i, cidx));
    ja.push_back(std::move(row));
  }
  return json{{"A", std::move(ja)}, {"a", q.a}, {"a0", q.a0}};
}

}  // namespace

ProblemFile parse_problem(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  return from_json(j);
}

ProblemFile parse_problem(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

ProblemFile load_problem(const std::string& path, std::istream& in) {
  if (path == "-") return parse_problem(in);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open problem file: " + path);
  return parse_problem(file);
}

std::string emit_problem(const ProblemFile& p) {
  json j{{"n", p.n},
         {"f", quadratic_to_json(p.f)},
         {"tolerances",
          {{"tol_rel", p.tolerances.tol_rel},
           {"tol_abs", p.tolerances.tol_abs}}}};
  if (p.g) j["g"] = quadratic_to_json(*p.g);
  return j.dump(2) + "\n";
}

}  // namespace quadsep
