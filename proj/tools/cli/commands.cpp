#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"
#include "fractarc/measure.hpp"
#include "model_io.hpp"
#include "svg.hpp"

namespace fractarc::cli {

using nlohmann::json;

namespace {

constexpr double kMassEpsilons[] = {0.5, 0.25, 0.1};
constexpr std::size_t kContainmentSamples = 100;
constexpr std::size_t kAddressDepth = 24;

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void emit(const RunConfig& config, const std::string& contents, std::ostream& out) {
  if (config.out.empty()) {
    out << contents;
  } else {
    write_atomic(config.out, contents);
  }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InsufficientDepth& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "construction failed: " << e.what() << '\n';
    return kConstructionFailed;
  } catch (const RoutingFailed& e) {
    err << "construction failed: " << e.what() << '\n';
    return kConstructionFailed;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "construction failed: " << e.what() << '\n';
    return kConstructionFailed;
  }
}

Model model_for(const RunConfig& config) {
  if (!config.model.empty()) return load_model(config.model);
  return build_model(config);
}

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

std::vector<Check> run_checks(const Model& model, const RunConfig& config) {
  std::vector<Check> checks;
  if (model.degenerate()) {
    for (const char* name : {"uniform_perfectness", "mass_bounds", "injectivity", "containment", "counting"}) {
      checks.push_back({name, true, "vacuous: the model is the unit interval"});
    }
    return checks;
  }
  const ArcApproximation& arc = *model.arc;
  Sampler sampler(config.seed);

  RatioCantorSet e = arc.e();
  const int depth = std::min(config.verify_depth, e.generation_budget());
  if (depth < 1) throw ConfigError("verify_depth must be at least 1");
  e.build_through(depth);
  {
    const auto samples =
        sample_endpoint_radii(e, depth, config.samples, sampler, e.length(depth).get_d(), 2.0);
    const auto report = verify_uniform_perfectness(e, samples, depth);
    Check c{"uniform_perfectness", report.all_conclusive(), ""};
    c.detail = "K=" + report.constant.get_str() + " witnessed " + std::to_string(report.witnessed) + ", vacuous " +
               std::to_string(report.vacuous) + ", inconclusive " + std::to_string(report.inconclusive);
    checks.push_back(std::move(c));
  }
  {
    NaturalMeasure mu(e, depth);
    Check c{"mass_bounds", true, ""};
    for (double eps : kMassEpsilons) {
      const auto samples =
          sample_endpoint_radii(e, depth, config.samples, sampler, e.length(depth).get_d(), 1.0);
      const auto cert = verify_mass_bounds(mu, eps, samples, depth);
      c.pass = c.pass && cert.valid();
      if (!c.detail.empty()) c.detail += "; ";
      c.detail += "eps=" + short_number(eps) + " C'=" + number(cert.constant) + " passed " + std::to_string(cert.passed) +
                  "/" + std::to_string(cert.samples);
      if (!cert.failure.empty()) c.detail += " (" + cert.failure + ")";
    }
    checks.push_back(std::move(c));
  }
  {
    const auto report = verify_injectivity(arc, arc.depth());
    checks.push_back({"injectivity", report.pass,
                      report.pass ? std::to_string(report.connectors_checked) + " connectors disjoint, traversal of " +
                                        std::to_string(report.traversal_vertices) + " vertices simple"
                                  : report.failure});
  }
  {
    Check c{"containment", true, ""};
    std::vector<Address> addresses;
    for (std::size_t i = 0; i < kContainmentSamples; ++i) {
      addresses.push_back(Address::random(arc.ambient_dimension(), kAddressDepth, sampler));
    }
    for (int k = 1; k <= arc.depth(); ++k) {
      const auto report = verify_containment(arc, k, addresses);
      c.pass = c.pass && report.pass;
      if (!c.detail.empty()) c.detail += "; ";
      c.detail += "k=" + std::to_string(k) + " max " + number(report.max_distance) + " <= " + number(report.bound);
    }
    checks.push_back(std::move(c));
  }
  {
    const auto report = verify_counting(arc);
    std::string detail = "cells " + std::to_string(arc.cells(arc.depth()).cells.size()) + ", connectors " +
                         std::to_string(arc.cumulative_connectors(arc.depth()));
    for (const auto& f : report.failures) detail += "; " + f;
    checks.push_back({"counting", report.pass, detail});
  }
  return checks;
}

}  // namespace

std::string series_csv(const BoxCountSeries& series) {
  std::ostringstream out;
  out << "scale,count,log_inverse_scale,log_count\n";
  for (std::size_t i = 0; i < series.scales.size(); ++i) {
    const double s = series.scales[i];
    const auto n = series.counts[i];
    out << number(s) << ',' << n << ',' << number(std::log(1.0 / s)) << ','
        << number(std::log(static_cast<double>(n))) << '\n';
  }
  return out.str();
}

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Model model = build_model(config);
    const std::string text = dump_json(model_to_json(model), -1);
    std::ostream& summary = config.out.empty() ? err : out;
    emit(config, text, out);
    if (model.degenerate()) {
      summary << "c=1: unit interval, 1 cell, 0 connectors\n";
      return static_cast<int>(kPass);
    }
    const ArcApproximation& arc = *model.arc;
    summary << "n=" << arc.n() << " y_ratio=" << arc.y().ratio().get_str() << " depth=" << arc.depth() << '\n';
    for (int k = 1; k <= arc.depth(); ++k) {
      const std::size_t cells = arc.cells(k).cells.size();
      const std::size_t joins = arc.cumulative_connectors(k);
      summary << "generation " << k << ": cells " << cells << ", connectors " << joins << ", param_intervals "
              << cells + joins << '\n';
    }
    return static_cast<int>(kPass);
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.model.empty()) throw ConfigError("verify needs --model");
    const Model model = load_model(config.model);
    const auto checks = run_checks(model, config);
    bool all = true;
    json report;
    report["model"] = config.model;
    report["seed"] = config.seed;
    report["checks"] = json::array();
    for (const auto& c : checks) {
      all = all && c.pass;
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      report["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    report["pass"] = all;
    if (!config.out.empty()) write_atomic(config.out, dump_json(report));
    return static_cast<int>(all ? kPass : kVerificationFailed);
  });
}

EstimateResult run_estimate(const RunConfig& config) {
  EstimateResult result;
  result.preset = config.preset.empty() ? (config.model.empty() ? "cantor" : "arc") : config.preset;
  const std::string& preset = result.preset;
  auto window_or = [&](const std::vector<double>& fallback) {
    return config.scales.empty() ? fallback : parse_scales(config.scales);
  };
  if (preset == "cantor" || preset == "product") {
    const Rational r = parse_rational(config.r_text);
    const int g = config.generation > 0 ? config.generation : 12;
    SelfSimilarCantor factor(r, std::max(g, kDefaultGenerationBudget));
    const int copies = preset == "cantor" ? 1 : config.copies;
    const double resolution = std::pow(r.get_d(), g);
    const PointCloud points =
        copies == 1 ? self_similar_sample(factor, g) : product_sample(ProductCantor{factor, copies, 0.0}, g);
    result.series = box_count_series(points, window_or(dyadic_window(g, resolution)), resolution);
    result.expected = copies * factor.dimension();
    result.parameters = {{"r", r.get_str()}, {"copies", copies}, {"generation", g}};
  } else if (preset == "snowflake" || preset == "rug") {
    const std::string eps_text =
        config.epsilon_text.empty() ? (preset == "snowflake" ? std::string("1/2") : std::string("koch"))
                                    : config.epsilon_text;
    const double eps = parse_real_expression(eps_text);
    if (preset == "snowflake") {
      const int g = config.generation > 0 ? config.generation : 12;
      const PointCloud points = interval_sample(g);
      const double resolution = std::pow(std::ldexp(1.0, -g), eps);
      result.series = ball_net_series(SnowflakeMetric(eps), points, window_or(net_window(resolution)), resolution);
      result.expected = expected_snowflake_dimension(eps);
      result.parameters = {{"epsilon", number(eps)}, {"generation", g}};
    } else {
      const int g = config.generation > 0 ? config.generation : 10;
      const RugSpace space = RugSpace::snowflake(eps);
      const int second = 1 << g;
      const int first = static_cast<int>(std::ceil(std::pow(2.0, g / eps)));
      const PointCloud points = sample_rug(space, first, second);
      const double resolution = std::max(std::pow(1.0 / first, eps), 1.0 / second);
      result.series = ball_net_series(space, points, window_or(net_window(resolution)), resolution);
      result.expected = expected_rug_dimension(eps);
      result.parameters = {{"epsilon", number(eps)}, {"generation", g}, {"grid", {first + 1, second + 1}}};
    }
  } else if (preset == "arc") {
    const Model model = model_for(config);
    result.expected = expected_dimensions(model.c).hausdorff;
    if (model.degenerate()) {
      const int g = config.generation > 0 ? config.generation : 12;
      const PointCloud points = interval_sample(g);
      const double resolution = std::ldexp(1.0, -g);
      result.series = box_count_series(points, window_or(dyadic_window(g, resolution)), resolution);
      result.parameters = {{"c", model.c_text}, {"generation", g}, {"model", "unit interval"}};
    } else {
      const ArcApproximation& arc = *model.arc;
      result.series = box_count_series(arc_sample(arc), window_or(arc_window(arc)));
      result.parameters = {{"c", model.c_text}, {"depth", arc.depth()}, {"n", arc.n()}};
    }
  } else {
    throw ConfigError("unknown preset '" + preset + "' (cantor, product, snowflake, rug, arc)");
  }
  result.estimate = estimate_dimension(result.series);
  return result;
}

json estimate_report(const EstimateResult& result) {
  const auto& est = result.estimate;
  json report;
  report["preset"] = result.preset;
  report["estimator"] = est.kind == EstimatorKind::box ? "box" : "ball_net";
  report["parameters"] = result.parameters;
  report["slope"] = est.slope;
  report["intercept"] = est.intercept;
  report["r_squared"] = est.r_squared;
  report["scale_min"] = est.scale_min;
  report["scale_max"] = est.scale_max;
  report["scales_used"] = est.scales_used;
  report["expected"] = result.expected;
  report["gap"] = est.slope - result.expected;
  report["caveat"] = box_dimension_caveat();
  json rows = json::array();
  for (std::size_t i = 0; i < result.series.scales.size(); ++i) {
    rows.push_back({{"scale", result.series.scales[i]}, {"count", result.series.counts[i]}});
  }
  report["series"] = std::move(rows);
  return report;
}

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const EstimateResult result = run_estimate(config);
    emit(config, dump_json(estimate_report(result)), out);
    if (!config.csv.empty()) write_atomic(config.csv, series_csv(result.series));
    if (!config.out.empty()) {
      out << result.preset << ": slope " << number(result.estimate.slope) << ", expected " << number(result.expected)
          << ", r^2 " << number(result.estimate.r_squared) << '\n';
    }
    return static_cast<int>(kPass);
  });
}

int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.model.empty()) throw ConfigError("export needs --model");
    const Model model = load_model(config.model);
    std::string text;
    if (config.format == "json") {
      text = dump_json(model_to_json(model), -1);
    } else if (config.format == "svg") {
      if (model.degenerate()) throw ConfigError("svg export needs an arc model (c > 1)");
      if (model.arc->n() != 1) throw ConfigError("svg export needs n = 1; this model has n = " +
                                                 std::to_string(model.arc->n()));
      text = render_svg(*model.arc);
    } else {
      const auto scales = [&](const std::vector<double>& fallback) {
        return config.scales.empty() ? fallback : parse_scales(config.scales);
      };
      if (model.degenerate()) {
        const PointCloud points = interval_sample(12);
        text = series_csv(box_count_series(points, scales(dyadic_window(12, std::ldexp(1.0, -12)))));
      } else {
        text = series_csv(box_count_series(arc_sample(*model.arc), scales(arc_window(*model.arc))));
      }
    }
    emit(config, text, out);
    return static_cast<int>(kPass);
  });
}

}  // namespace fractarc::cli
