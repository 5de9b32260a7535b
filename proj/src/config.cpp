#include "diracshell/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "diracshell/alpha.hpp"

namespace diracshell {

using nlohmann::json;

ConfigError::ConfigError(const std::string& key, const std::string& what)
    : InvalidInput("config key '" + key + "': " + what), key_(key) {}

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads one object, remembering which keys were consumed so leftovers can be
// reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string key(const std::string& k) const { return join(path_, k); }

  const json& raw(const std::string& k) {
    used_.insert(k);
    auto it = j_.find(k);
    if (it == j_.end()) throw ConfigError(key(k), "missing");
    return *it;
  }

  double number(const std::string& k, double def) { return has(k) ? number(k) : def; }
  double number(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number()) throw ConfigError(key(k), "expected a number");
    return v.get<double>();
  }
  int integer(const std::string& k, int def) {
    if (!has(k)) return def;
    const json& v = raw(k);
    if (!v.is_number_integer()) throw ConfigError(key(k), "expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& k, bool def) {
    if (!has(k)) return def;
    const json& v = raw(k);
    if (!v.is_boolean()) throw ConfigError(key(k), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& k, const std::string& def) { return has(k) ? string(k) : def; }
  std::string string(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_string()) throw ConfigError(key(k), "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& k) {
    const json& v = raw(k);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ConfigError(key(k), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(key(k), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

double positive(double v, const std::string& key) {
  if (!(v > 0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
  return v;
}

int at_least(int v, int lo, const std::string& key) {
  if (v < lo) throw ConfigError(key, "must be at least " + std::to_string(lo));
  return v;
}

cplx parse_entry(const json& e, const std::string& key) {
  if (e.is_number()) return e.get<double>();
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ConfigError(key, "matrix entries must be numbers or [re, im] pairs");
}

// "identity" | "alpha0".."alpha3" | scalar tau (tau I) | N x N nested array
MatrixXcd parse_matrix(const json& v, const std::string& key, int dimension) {
  const int N = spinor_size(dimension);
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "identity") return MatrixXcd::Identity(N, N);
    const AlphaSet a = alpha_matrices(dimension);
    if (name == "alpha0") return a.alpha0;
    for (int k = 1; k <= dimension; ++k)
      if (name == "alpha" + std::to_string(k)) return a.alpha[k - 1];
    throw ConfigError(key, "unknown matrix name '" + name + "'");
  }
  if (v.is_number()) return v.get<double>() * MatrixXcd::Identity(N, N);
  if (!v.is_array() || static_cast<int>(v.size()) != N)
    throw ConfigError(key, "expected " + std::to_string(N) + " rows");
  MatrixXcd M(N, N);
  for (int i = 0; i < N; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<int>(row.size()) != N)
      throw ConfigError(key, "row " + std::to_string(i) + " must have " + std::to_string(N) + " entries");
    for (int j = 0; j < N; ++j) M(i, j) = parse_entry(row[j], key);
  }
  return M;
}

ProfileTerm::Kind parse_term_kind(const std::string& s, const std::string& key, int dimension) {
  if (s == "cos") return ProfileTerm::Kind::Cos;
  if (s == "sin") return ProfileTerm::Kind::Sin;
  if (s == "polar_cos") {
    if (dimension != 3) throw ConfigError(key, "polar_cos terms need a surface (dimension 3)");
    return ProfileTerm::Kind::PolarCos;
  }
  throw ConfigError(key, "unknown term kind '" + s + "' (cos, sin, polar_cos)");
}

const char* term_kind_name(ProfileTerm::Kind k) {
  switch (k) {
    case ProfileTerm::Kind::Cos: return "cos";
    case ProfileTerm::Kind::Sin: return "sin";
    case ProfileTerm::Kind::PolarCos: return "polar_cos";
  }
  return "cos";
}

ScalarProfile parse_profile(const json& v, const std::string& path, int dimension) {
  Section s(v, path);
  ScalarProfile p;
  p.constant = s.number("constant", 1.0);
  if (s.has("terms")) {
    const json& terms = s.raw("terms");
    if (!terms.is_array()) throw ConfigError(s.key("terms"), "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Section t(terms[i], s.key("terms") + "[" + std::to_string(i) + "]");
      ProfileTerm term;
      term.kind = parse_term_kind(t.string("kind"), t.key("kind"), dimension);
      term.k = at_least(t.integer("k", 1), 0, t.key("k"));
      term.coeff = t.number("coeff");
      t.finish();
      p.terms.push_back(term);
    }
  }
  s.finish();
  return p;
}

MatrixField parse_field(const json& v, const std::string& path, int dimension) {
  if (!v.is_object()) return {parse_matrix(v, path, dimension), {}};
  Section s(v, path);
  MatrixField f{parse_matrix(s.raw("matrix"), s.key("matrix"), dimension), {}};
  if (s.has("profile")) f.profile = parse_profile(s.raw("profile"), s.key("profile"), dimension);
  s.finish();
  return f;
}

json matrix_echo(const MatrixXcd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json field_echo(const MatrixField& f) {
  json terms = json::array();
  for (const auto& t : f.profile.terms)
    terms.push_back({{"kind", term_kind_name(t.kind)}, {"k", t.k}, {"coeff", t.coeff}});
  return {{"matrix", matrix_echo(f.matrix)}, {"profile", {{"constant", f.profile.constant}, {"terms", terms}}}};
}

ShapeSpec parse_surface(Section& s, int dimension) {
  const std::string shape = s.string("shape");
  auto need = [&](bool ok) {
    if (!ok)
      throw ConfigError(s.key("shape"), "shape '" + shape + "' does not match dimension " + std::to_string(dimension));
  };
  if (shape == "circle") {
    need(dimension == 2);
    return ShapeSpec::circle(positive(s.number("radius", 1.0), s.key("radius")));
  }
  if (shape == "ellipse") {
    need(dimension == 2);
    return ShapeSpec::ellipse(positive(s.number("a"), s.key("a")), positive(s.number("b"), s.key("b")));
  }
  if (shape == "star") {
    need(dimension == 2);
    double r0 = positive(s.number("r0", 1.0), s.key("r0"));
    std::vector<double> c = s.has("cos") ? s.numbers("cos") : std::vector<double>{};
    std::vector<double> sn = s.has("sin") ? s.numbers("sin") : std::vector<double>{};
    return ShapeSpec::star(r0, c, sn);
  }
  if (shape == "sphere") {
    need(dimension == 3);
    return ShapeSpec::sphere(positive(s.number("radius", 1.0), s.key("radius")));
  }
  if (shape == "spheroid") {
    need(dimension == 3);
    return ShapeSpec::spheroid(positive(s.number("a"), s.key("a")), positive(s.number("c"), s.key("c")));
  }
  throw ConfigError(s.key("shape"), "unknown shape '" + shape + "' (circle, ellipse, star, sphere, spheroid)");
}

json surface_echo(const ShapeSpec& sp) {
  json j = {{"shape", shape_name(sp.kind)}};
  switch (sp.kind) {
    case ShapeKind::Circle:
    case ShapeKind::Sphere: j["radius"] = sp.radius; break;
    case ShapeKind::Ellipse: j["a"] = sp.a; j["b"] = sp.b; break;
    case ShapeKind::Spheroid: j["a"] = sp.a; j["c"] = sp.c; break;
    case ShapeKind::Star: j["r0"] = sp.r0; j["cos"] = sp.cos_coeffs; j["sin"] = sp.sin_coeffs; break;
  }
  return j;
}

std::array<double, 3> parse_vec(Section& s, const std::string& k, int dimension, std::array<double, 3> def) {
  if (!s.has(k)) return def;
  std::vector<double> v = s.numbers(k);
  if (static_cast<int>(v.size()) != dimension)
    throw ConfigError(s.key(k), "expected " + std::to_string(dimension) + " components");
  std::array<double, 3> out{0, 0, 0};
  for (int i = 0; i < dimension; ++i) out[i] = v[i];
  return out;
}

json vec_echo(const std::array<double, 3>& v, int dimension) {
  return std::vector<double>(v.begin(), v.begin() + dimension);
}

void parse_numerics(Section& s, RunConfig& c) {
  const int n = c.dimension;
  c.surface_order = at_least(s.integer("surface_order", n == 2 ? 256 : 48), 4, s.key("surface_order"));
  c.singular.panel_points = at_least(s.integer("panel_points", 14), 2, s.key("panel_points"));
  c.singular.grading = s.number("grading", 0.25);
  if (!(c.singular.grading > 0 && c.singular.grading < 1)) throw ConfigError(s.key("grading"), "must lie in (0, 1)");
  c.singular.polar_points = at_least(s.integer("polar_points", 0), 0, s.key("polar_points"));
  c.singular.azimuth_points = at_least(s.integer("azimuth_points", 0), 0, s.key("azimuth_points"));
  c.scan_points = at_least(s.integer("scan_points", 400), 2, s.key("scan_points"));
  c.margin = positive(s.number("margin", 1e-3), s.key("margin"));
  if (c.margin >= 0.5) throw ConfigError(s.key("margin"), "must be below 0.5");
  c.rank_tol = positive(s.number("rank_tol", 1e-8), s.key("rank_tol"));
  c.roots.tol = positive(s.number("root_tol", 1e-10), s.key("root_tol"));
  c.roots.dip_threshold = positive(s.number("dip_threshold", 1e-6), s.key("dip_threshold"));
  c.roots.singular_threshold = positive(s.number("singular_threshold", 1e-6), s.key("singular_threshold"));
  c.roots.edge_fraction = positive(s.number("edge_fraction", 1e-2), s.key("edge_fraction"));
  c.stability_check = s.boolean("stability_check", true);

  if (s.has("eps")) {
    c.eps_list = s.numbers("eps");
    if (c.eps_list.empty()) throw ConfigError(s.key("eps"), "must not be empty");
    for (double e : c.eps_list) positive(e, s.key("eps"));
  }
  c.profile = s.string("profile", "uniform");
  {
    const auto& kinds = profile_kinds();
    if (std::find(kinds.begin(), kinds.end(), c.profile) == kinds.end())
      throw ConfigError(s.key("profile"), "unknown profile '" + c.profile + "'");
  }
  c.eps.surface_order = at_least(s.integer("eps_surface_order", n == 2 ? 32 : 8), 4, s.key("eps_surface_order"));
  c.eps.transverse_points =
      at_least(s.integer("eps_transverse_points", n == 2 ? 8 : 4), 1, s.key("eps_transverse_points"));
  c.eps.panel_points = at_least(s.integer("eps_panel_points", 8), 2, s.key("eps_panel_points"));
  c.eps.duffy_points = at_least(s.integer("eps_duffy_points", 10), 2, s.key("eps_duffy_points"));
  c.eps.azimuth_points = at_least(s.integer("eps_azimuth_points", 32), 4, s.key("eps_azimuth_points"));
  c.eps.use_weight = s.boolean("eps_use_weight", true);
  c.eps_convergence_check = s.boolean("eps_convergence_check", false);

  c.eigen_index = at_least(s.integer("eigen_index", 0), 0, s.key("eigen_index"));
  c.grid.min = parse_vec(s, "grid_min", n, {-3, -3, n == 3 ? -3.0 : 0.0});
  c.grid.max = parse_vec(s, "grid_max", n, {3, 3, n == 3 ? 3.0 : 0.0});
  if (s.has("grid_points")) {
    const json& v = s.raw("grid_points");
    if (!v.is_array() || static_cast<int>(v.size()) != n)
      throw ConfigError(s.key("grid_points"), "expected " + std::to_string(n) + " integers");
    c.grid.points = {1, 1, 1};
    for (int i = 0; i < n; ++i) {
      if (!v[i].is_number_integer()) throw ConfigError(s.key("grid_points"), "expected integers");
      c.grid.points[i] = v[i].get<int>();
      if (c.grid.points[i] < 1) throw ConfigError(s.key("grid_points"), "grid is empty");
    }
  } else {
    c.grid.points = n == 2 ? std::array<int, 3>{61, 61, 1} : std::array<int, 3>{21, 21, 21};
  }
  for (int i = 0; i < n; ++i)
    if (!(c.grid.max[i] >= c.grid.min[i])) throw ConfigError(s.key("grid_max"), "must not be below grid_min");
  c.decay_direction = parse_vec(s, "decay_direction", n, {1, 0, 0});
  double dn = 0;
  for (double d : c.decay_direction) dn += d * d;
  if (!(dn > 0)) throw ConfigError(s.key("decay_direction"), "must be nonzero");
}

json numerics_echo(const RunConfig& c) {
  const int n = c.dimension;
  return {
      {"surface_order", c.surface_order},
      {"panel_points", c.singular.panel_points},
      {"grading", c.singular.grading},
      {"polar_points", c.singular.polar_points},
      {"azimuth_points", c.singular.azimuth_points},
      {"scan_points", c.scan_points},
      {"margin", c.margin},
      {"rank_tol", c.rank_tol},
      {"root_tol", c.roots.tol},
      {"dip_threshold", c.roots.dip_threshold},
      {"singular_threshold", c.roots.singular_threshold},
      {"edge_fraction", c.roots.edge_fraction},
      {"stability_check", c.stability_check},
      {"eps", c.eps_list},
      {"profile", c.profile},
      {"eps_surface_order", c.eps.surface_order},
      {"eps_transverse_points", c.eps.transverse_points},
      {"eps_panel_points", c.eps.panel_points},
      {"eps_duffy_points", c.eps.duffy_points},
      {"eps_azimuth_points", c.eps.azimuth_points},
      {"eps_use_weight", c.eps.use_weight},
      {"eps_convergence_check", c.eps_convergence_check},
      {"eigen_index", c.eigen_index},
      {"grid_min", vec_echo(c.grid.min, n)},
      {"grid_max", vec_echo(c.grid.max, n)},
      {"grid_points", std::vector<int>(c.grid.points.begin(), c.grid.points.begin() + n)},
      {"decay_direction", vec_echo(c.decay_direction, n)},
  };
}

}  // namespace

RunConfig parse_config(const json& j) {
  Section root(j, "");
  RunConfig c;

  {
    Section s(root.raw("problem"), "problem");
    c.dimension = s.integer("dimension", 2);
    if (c.dimension != 2 && c.dimension != 3) throw ConfigError(s.key("dimension"), "must be 2 or 3");
    c.mass = s.number("mass");
    if (!(c.mass != 0) || !std::isfinite(c.mass)) throw ConfigError(s.key("mass"), "must be nonzero (the gap is empty otherwise)");
    s.finish();
  }
  {
    Section s(root.raw("surface"), "surface");
    try {
      c.shape = parse_surface(s, c.dimension);
      Surface check(c.shape);
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ConfigError("surface", e.what());
    }
    s.finish();
  }
  {
    Section s(root.raw("coupling"), "coupling");
    MatrixField F = parse_field(s.raw("F"), s.key("F"), c.dimension);
    const bool hasG = s.has("G"), hasL = s.has("L");
    if (hasG == hasL) throw ConfigError(s.key(hasG ? "L" : "G"), "give exactly one of G or L");
    if (hasG)
      c.coupling = CouplingSpec::from_fields(F, parse_field(s.raw("G"), s.key("G"), c.dimension));
    else
      c.coupling = CouplingSpec::with_L(F, parse_matrix(s.raw("L"), s.key("L"), c.dimension));
    s.finish();
  }
  {
    static const json empty = json::object();
    Section s(root.has("numerics") ? root.raw("numerics") : empty, "numerics");
    parse_numerics(s, c);
    s.finish();
  }
  {
    static const json empty = json::object();
    Section s(root.has("output") ? root.raw("output") : empty, "output");
    c.out_dir = s.string("dir", ".");
    c.prefix = s.string("prefix", "run");
    if (c.prefix.empty()) throw ConfigError(s.key("prefix"), "must not be empty");
    s.finish();
  }
  root.finish();

  json coupling = {{"F", field_echo(c.coupling.F)}};
  if (c.coupling.L)
    coupling["L"] = matrix_echo(*c.coupling.L);
  else
    coupling["G"] = field_echo(c.coupling.G);
  c.echo = {
      {"problem", {{"dimension", c.dimension}, {"mass", c.mass}}},
      {"surface", surface_echo(c.shape)},
      {"coupling", coupling},
      {"numerics", numerics_echo(c)},
      {"output", {{"dir", c.out_dir}, {"prefix", c.prefix}}},
  };
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

std::string config_hash(const json& echo) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : echo.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Point> grid_points(const GridSpec& g, int dimension) {
  auto coord = [&](int axis, int i) {
    const int np = g.points[axis];
    return np == 1 ? 0.5 * (g.min[axis] + g.max[axis])
                   : g.min[axis] + (g.max[axis] - g.min[axis]) * i / (np - 1);
  };
  std::vector<Point> pts;
  const int nz = dimension == 3 ? g.points[2] : 1;
  pts.reserve(static_cast<std::size_t>(g.points[0]) * g.points[1] * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.points[1]; ++j)
      for (int i = 0; i < g.points[0]; ++i)
        pts.emplace_back(coord(0, i), coord(1, j), dimension == 3 ? coord(2, k) : 0.0);
  return pts;
}

double grid_cell_volume(const GridSpec& g, int dimension) {
  double v = 1;
  for (int a = 0; a < dimension; ++a)
    v *= g.points[a] > 1 ? (g.max[a] - g.min[a]) / (g.points[a] - 1) : 1.0;
  return v;
}

}  // namespace diracshell
