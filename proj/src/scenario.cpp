#include "parkplan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace parkplan {

namespace {

constexpr double kDeg = M_PI / 180.0;

HalfSpacePolygon make_poly(std::initializer_list<std::array<double, 3>> rows) {
  MatrixX2d a(static_cast<int>(rows.size()), 2);
  VectorXd b(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& r : rows) {
    a(i, 0) = r[0];
    a(i, 1) = r[1];
    b(i) = r[2];
    ++i;
  }
  return HalfSpacePolygon::from_halfspaces(a, b);
}

Bounds default_bounds(double x_lo, double x_hi, double y_lo, double y_hi) {
  Bounds b;
  const double v_max = 5.0 / 3.6;
  const double delta_max = 40.0 * kDeg;
  const double omega_max = 5.0 * kDeg;
  b.state_lower = {x_lo, y_lo, -M_PI, -v_max, -delta_max};
  b.state_upper = {x_hi, y_hi, M_PI, v_max, delta_max};
  b.control_lower = {-1.0, -omega_max};
  b.control_upper = {1.0, omega_max};
  return b;
}

}  // namespace

void CostWeights::validate() const {
  if (r <= 0.0 || p_diag.minCoeff() <= 0.0) {
    throw Error("CostWeights: r and the diagonal of P must be positive");
  }
}

void Scenario::validate() const {
  vehicle.validate();
  weights.validate();
  const std::array<const VehicleState*, 2> boundary = {&init_state, &final_state};
  for (const VehicleState* s : boundary) {
    const std::array<double, 5> v = s->as_array();
    for (int i = 0; i < 5; ++i) {
      if (v[i] < bounds.state_lower[i] - 1e-12 || v[i] > bounds.state_upper[i] + 1e-12) {
        throw Error("Scenario '" + name + "': boundary state component " +
                    std::to_string(i) + " violates its bounds");
      }
    }
    const HalfSpacePolygon body = body_polygon(*s, vehicle);
    for (const Vector2d& corner : body.vertices()) {
      if (!environment.contains_point(corner)) {
        throw Error("Scenario '" + name + "': boundary body polygon leaves the environment");
      }
    }
  }
  for (const HalfSpacePolygon& obs : obstacles) {
    if (sat_disjoint(obs, environment).disjoint) {
      throw Error("Scenario '" + name + "': obstacle does not overlap the environment");
    }
  }
}

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  s.vehicle = VehicleParams{};
  s.init_state = VehicleState{0.0, 0.0, 0.0, 0.0, 0.0};
  // Environment rows are stored in cyclic edge order; obstacle rows keep the
  // published order. Two obstacle rows in the published tables are
  // inconsistent (empty or unbounded sets) and carry minimal repairs, noted in
  // the README benchmark section.
  if (name == "vertical") {
    s.environment = make_poly({{0, 1, 8}, {-1, 0, 2}, {0, -1, 8}, {1, 0, 15}});
    s.obstacles = {
        make_poly({{0, 1, -2}, {1, 0, 5}, {0, -1, 8}, {-1, 0, 0}}),
        make_poly({{0, 1, -2}, {-1, 0, -7.5}, {0, -1, 8}, {1, 0, 15}}),
    };
    s.bounds = default_bounds(-2.0, 15.0, -8.0, 8.0);
    s.final_state = VehicleState{6.3, -6.7, 90.0 * kDeg, 0.0, 0.0};
  } else if (name == "parallel") {
    s.environment = make_poly({{0, 1, 8}, {-1, 0, 2}, {0, -1, 6}, {1, 0, 22}});
    s.obstacles = {
        make_poly({{0, 1, -3}, {1, 0, 5}, {0, -1, 6}, {-1, 0, 0}}),
        make_poly({{0, 1, -3}, {-1, 0, -12}, {0, -1, 6}, {1, 0, 20}}),
    };
    s.bounds = default_bounds(-2.0, 22.0, -6.0, 8.0);
    s.final_state = VehicleState{6.9, -4.3, 0.0, 0.0, 0.0};
  } else if (name == "oblique") {
    s.environment = make_poly({{0, 1, 4}, {-1, 0, 4}, {0, -1, 8}, {1, 0, 20}});
    s.obstacles = {
        make_poly({{0, 1, -2}, {-1, 0, 7}, {0, -1, 8}, {1, 0, 2}}),
        make_poly({{0, 1, -2}, {-1, 1, -11}, {0, -1, 8}, {1, 0, 18}}),
    };
    s.bounds = default_bounds(-4.0, 20.0, -8.0, 4.0);
    s.final_state = VehicleState{4.0, -5.0, 45.0 * kDeg, 0.0, 0.0};
  } else {
    throw Error("unknown built-in scenario '" + name + "'");
  }
  s.validate();
  return s;
}

std::vector<std::string> builtin_scenario_names() { return {"vertical", "parallel", "oblique"}; }

namespace {

using nlohmann::json;

HalfSpacePolygon poly_from_json(const json& j) {
  const auto& a = j.at("A");
  const auto& b = j.at("b");
  if (a.size() != b.size()) throw IoError("polygon JSON: A and b row counts differ");
  MatrixX2d normals(static_cast<int>(a.size()), 2);
  VectorXd offsets(static_cast<int>(b.size()));
  for (int i = 0; i < normals.rows(); ++i) {
    normals(i, 0) = a.at(i).at(0).get<double>();
    normals(i, 1) = a.at(i).at(1).get<double>();
    offsets(i) = b.at(i).get<double>();
  }
  return HalfSpacePolygon::from_halfspaces(normals, offsets);
}

json poly_to_json(const HalfSpacePolygon& p) {
  json a = json::array();
  json b = json::array();
  for (int i = 0; i < p.num_edges(); ++i) {
    a.push_back({p.normals()(i, 0), p.normals()(i, 1)});
    b.push_back(p.offsets()(i));
  }
  return json{{"A", a}, {"b", b}};
}

VehicleState state_from_json(const json& j) {
  VehicleState s;
  s.x = j.at("x").get<double>();
  s.y = j.at("y").get<double>();
  s.theta = j.at("theta_deg").get<double>() * kDeg;
  s.v = j.value("v", 0.0);
  s.delta = j.value("delta_deg", 0.0) * kDeg;
  return s;
}

json state_to_json(const VehicleState& s) {
  return json{{"x", s.x},
              {"y", s.y},
              {"theta_deg", s.theta / kDeg},
              {"v", s.v},
              {"delta_deg", s.delta / kDeg}};
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError(std::string("scenario JSON parse failure: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.value("name", "custom");
    s.environment = poly_from_json(j.at("environment"));
    for (const auto& jo : j.at("obstacles")) {
      s.obstacles.push_back(poly_from_json(jo));
    }
    const json& jv = j.at("vehicle");
    s.vehicle.wheelbase = jv.at("L").get<double>();
    s.vehicle.body_length = jv.at("length").get<double>();
    s.vehicle.body_width = jv.at("width").get<double>();
    s.vehicle.rear_overhang = jv.at("rear_overhang").get<double>();
    s.init_state = state_from_json(j.at("init"));
    s.final_state = state_from_json(j.at("final"));

    const json& jb = j.at("bounds");
    auto range = [&](const char* key) {
      const auto& r = jb.at(key);
      return std::array<double, 2>{r.at(0).get<double>(), r.at(1).get<double>()};
    };
    const auto x = range("x"), y = range("y"), th = range("theta_deg"), v = range("v"),
               de = range("delta_deg"), a = range("a"), om = range("omega_deg_s");
    s.bounds.state_lower = {x[0], y[0], th[0] * kDeg, v[0], de[0] * kDeg};
    s.bounds.state_upper = {x[1], y[1], th[1] * kDeg, v[1], de[1] * kDeg};
    s.bounds.control_lower = {a[0], om[0] * kDeg};
    s.bounds.control_upper = {a[1], om[1] * kDeg};

    const json& jw = j.at("weights");
    s.weights.r = jw.at("r").get<double>();
    s.weights.p_diag = Vector2d(jw.at("P").at(0).get<double>(), jw.at("P").at(1).get<double>());
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw IoError(std::string("scenario JSON: missing or malformed field: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["environment"] = poly_to_json(s.environment);
  j["obstacles"] = json::array();
  for (const auto& o : s.obstacles) j["obstacles"].push_back(poly_to_json(o));
  j["vehicle"] = {{"L", s.vehicle.wheelbase},
                  {"length", s.vehicle.body_length},
                  {"width", s.vehicle.body_width},
                  {"rear_overhang", s.vehicle.rear_overhang}};
  j["init"] = state_to_json(s.init_state);
  j["final"] = state_to_json(s.final_state);
  j["bounds"] = {
      {"x", {s.bounds.state_lower[0], s.bounds.state_upper[0]}},
      {"y", {s.bounds.state_lower[1], s.bounds.state_upper[1]}},
      {"theta_deg", {s.bounds.state_lower[2] / kDeg, s.bounds.state_upper[2] / kDeg}},
      {"v", {s.bounds.state_lower[3], s.bounds.state_upper[3]}},
      {"delta_deg", {s.bounds.state_lower[4] / kDeg, s.bounds.state_upper[4] / kDeg}},
      {"a", {s.bounds.control_lower[0], s.bounds.control_upper[0]}},
      {"omega_deg_s", {s.bounds.control_lower[1] / kDeg, s.bounds.control_upper[1] / kDeg}},
  };
  j["weights"] = {{"r", s.weights.r}, {"P", {s.weights.p_diag.x(), s.weights.p_diag.y()}}};
  return j.dump(2);
}

Scenario resolve_scenario(const std::string& name_or_path) {
  for (const std::string& n : builtin_scenario_names()) {
    if (n == name_or_path) return builtin_scenario(n);
  }
  return load_scenario(name_or_path);
}

}  // namespace parkplan
