#include "model_io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fractarc/errors.hpp"

namespace fractarc::cli {

using nlohmann::json;

namespace {

json rational_json(const Rational& q) {
  const auto [num, den] = to_string_pair(q);
  return json::array({num, den});
}

Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ConfigError("rational must be a [numerator, denominator] string pair");
  }
  return from_string_pair(j[0].get<std::string>(), j[1].get<std::string>());
}

json point_json(const ExactPoint& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(rational_json(x));
  return out;
}

ExactPoint point_from(const json& j) {
  ExactPoint p;
  for (const auto& x : j) p.push_back(rational_from(x));
  return p;
}

}  // namespace

Model build_model(const RunConfig& config) {
  Model model;
  model.c_text = config.c_text;
  model.c = config.c;
  model.ratios = config.ratios;
  model.generation_budget = config.generation_budget;
  model.seed = config.seed;
  RatioSequence ratios = RatioSequence::parse(config.ratios);
  if (config.c == 1.0) return model;
  const ProductCantor y = product_for_dimension(config.c - 1.0, config.generation_budget);
  RoutingPolicy policy;
  if (!config.clearance.empty()) policy.clearance_schedule = config.clearance;
  RatioCantorSet e(std::move(ratios), config.generation_budget);
  model.arc.emplace(std::move(e), y.factor, y.copies, std::move(policy), config.generation_budget);
  model.arc->build_through(config.depth);
  return model;
}

json model_to_json(const Model& model) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["c"] = model.c_text;
  j["ratios"] = model.ratios;
  j["generation_budget"] = model.generation_budget;
  j["seed"] = model.seed;
  j["degenerate"] = model.degenerate();
  if (model.degenerate()) {
    j["interval"] = json::array({rational_json(Rational(0)), rational_json(Rational(1))});
    j["summary"] = {{"cells", 1}, {"connectors", 0}, {"param_intervals", 1}};
    return j;
  }
  const ArcApproximation& arc = *model.arc;
  j["n"] = arc.n();
  j["y_ratio"] = rational_json(arc.y().ratio());
  j["depth"] = arc.depth();
  json generations = json::array();
  json connectors = json::array();
  for (int k = 0; k <= arc.depth(); ++k) {
    json cells = json::array();
    for (const auto& c : arc.cells(k).cells) {
      cells.push_back({{"rank", c.rank},
                       {"parent", c.parent},
                       {"lo", point_json(c.box.lo)},
                       {"hi", point_json(c.box.hi)},
                       {"address", c.address.to_string()},
                       {"param", json::array({rational_json(c.param_lo), rational_json(c.param_hi)})}});
    }
    generations.push_back({{"generation", k}, {"cells", std::move(cells)}});
    json joins = json::array();
    if (k > 0) {
      for (const auto& c : arc.connectors(k)) {
        json vertices = json::array();
        for (const auto& v : c.vertices) vertices.push_back(point_json(v));
        joins.push_back({{"id", c.id},
                         {"parent", c.parent},
                         {"source", c.source},
                         {"target", c.target},
                         {"param", json::array({rational_json(c.param_lo), rational_json(c.param_hi)})},
                         {"vertices", std::move(vertices)}});
      }
    }
    connectors.push_back(std::move(joins));
  }
  j["generations"] = std::move(generations);
  j["connectors"] = std::move(connectors);
  const std::size_t cells = arc.cells(arc.depth()).cells.size();
  const std::size_t joins = arc.cumulative_connectors(arc.depth());
  j["summary"] = {{"cells", cells}, {"connectors", joins}, {"param_intervals", cells + joins}};
  return j;
}

Model model_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw ConfigError("unsupported schema_version " + j.at("schema_version").dump());
    }
    Model model;
    model.c_text = j.at("c").get<std::string>();
    model.c = parse_real_expression(model.c_text);
    model.ratios = j.at("ratios").get<std::string>();
    model.generation_budget = j.at("generation_budget").get<int>();
    model.seed = j.at("seed").get<std::uint64_t>();
    if (j.at("degenerate").get<bool>()) return model;

    const int n = j.at("n").get<int>();
    RatioCantorSet e(RatioSequence::parse(model.ratios), model.generation_budget);
    SelfSimilarCantor y(rational_from(j.at("y_ratio")), model.generation_budget);
    std::vector<CellComplex> generations;
    for (const auto& g : j.at("generations")) {
      CellComplex complex;
      complex.generation = g.at("generation").get<int>();
      complex.ambient_dimension = static_cast<std::size_t>(n) + 1;
      for (const auto& c : g.at("cells")) {
        Cell cell;
        cell.generation = complex.generation;
        cell.rank = c.at("rank").get<std::size_t>();
        cell.parent = c.at("parent").get<std::size_t>();
        cell.box.lo = point_from(c.at("lo"));
        cell.box.hi = point_from(c.at("hi"));
        cell.address = Address::parse(c.at("address").get<std::string>());
        cell.param_lo = rational_from(c.at("param").at(0));
        cell.param_hi = rational_from(c.at("param").at(1));
        complex.cells.push_back(std::move(cell));
      }
      generations.push_back(std::move(complex));
    }
    std::vector<std::vector<Connector>> connectors;
    int k = 0;
    for (const auto& list : j.at("connectors")) {
      std::vector<Connector> joins;
      for (const auto& c : list) {
        Connector conn;
        conn.id = c.at("id").get<std::size_t>();
        conn.generation = k;
        conn.parent = c.at("parent").get<std::size_t>();
        conn.source = c.at("source").get<std::size_t>();
        conn.target = c.at("target").get<std::size_t>();
        conn.param_lo = rational_from(c.at("param").at(0));
        conn.param_hi = rational_from(c.at("param").at(1));
        for (const auto& v : c.at("vertices")) conn.vertices.push_back(point_from(v));
        joins.push_back(std::move(conn));
      }
      connectors.push_back(std::move(joins));
      ++k;
    }
    model.arc.emplace(ArcApproximation::from_parts(std::move(e), std::move(y), n, std::move(generations),
                                                   std::move(connectors), model.generation_budget));
    return model;
  } catch (const json::exception& err) {
    throw ConfigError(std::string("malformed model: ") + err.what());
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("malformed model: ") + err.what());
  }
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read model file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
  return model_from_json(j);
}

std::string dump_json(const json& j, int indent) { return j.dump(indent) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace fractarc::cli
