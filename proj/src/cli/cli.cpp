#include "polyproj/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "polyproj/atomic.hpp"
#include "polyproj/closed_form.hpp"
#include "polyproj/error.hpp"
#include "polyproj/generate.hpp"
#include "polyproj/instance.hpp"
#include "polyproj/oracle.hpp"

namespace polyproj::cli {

namespace {

std::string json_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v[i]);
  }
  return s + "]";
}

std::string json_array(const Vector& v) {
  return json_array(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  }
  os << text;
}

// Closed-form dispatch on the shape of the constraint list.
ProjectionBreakdown closed_form(const std::vector<Constraint>& sets,
                                const Vector& x, const Tolerances& tol) {
  std::vector<Hyperplane> planes;
  std::vector<Halfspace> halves;
  for (const auto& s : sets) {
    if (const auto* h = std::get_if<Hyperplane>(&s)) {
      planes.push_back(*h);
    } else {
      halves.push_back(std::get<Halfspace>(s));
    }
  }
  if (halves.empty() && !planes.empty()) return project_hyperplanes(planes, x, tol);
  if (planes.empty() && halves.size() == 2) {
    return project_halfspace_pair(halves[0], halves[1], x, tol);
  }
  if (planes.size() == 1 && halves.size() == 1) {
    return project_hyperplane_halfspace(planes[0], halves[0], x, tol);
  }
  if (planes.empty() && halves.size() == 1) {
    // A single halfspace is the pair with a whole-space partner.
    const Halfspace whole{Vector::Zero(x.size()), 0.0};
    ProjectionBreakdown b = project_halfspace_pair(halves[0], whole, x, tol);
    b.lambda.resize(1);
    b.dependent_case.reset();
    return b;
  }
  throw Error(ErrorKind::InvalidArgument,
              "no closed form for this combination of sets; use --method "
              "oracle or dykstra");
}

std::string certificate_json(const KktCertificate& c) {
  std::ostringstream os;
  os << "{\"stationarity_residual\": " << format_real(c.stationarity_residual)
     << ", \"feasibility_residual\": " << format_real(c.feasibility_residual)
     << ", \"complementarity_residual\": "
     << format_real(c.complementarity_residual)
     << ", \"valid\": " << (c.valid ? "true" : "false") << '}';
  return os.str();
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptySet) {
      err << "empty intersection\n";
      return kExitEmpty;
    }
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const Tolerances& base) {
  using nlohmann::json;
  auto bad = [](const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, "config: " + what);
  };
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");

  ExperimentConfig cfg;
  cfg.tolerances = base;
  auto integer = [&](const char* key, auto& dst) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer()) bad(std::string(key) + " must be an integer");
    dst = doc[key].get<std::decay_t<decltype(dst)>>();
  };
  integer("seed", cfg.seed);
  integer("dim", cfg.dim);
  integer("trials", cfg.trials);
  integer("k_max", cfg.k_max);
  if (cfg.dim < 2) bad("dim must be >= 2");
  if (cfg.trials < 0) bad("trials must be >= 0");
  if (cfg.k_max < 1) bad("k_max must be >= 1");

  if (doc.contains("case_filter") && !doc["case_filter"].is_null()) {
    if (!doc["case_filter"].is_string()) bad("case_filter must be a string");
    cfg.case_filter = behavior_from_string(doc["case_filter"].get<std::string>());
    if (!cfg.case_filter) bad("unknown case_filter");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) bad("tolerances must be an object");
    auto real = [&](const char* key, double& dst) {
      if (!t.contains(key)) return;
      if (!t[key].is_number() || !(t[key].get<double>() > 0)) {
        bad(std::string("tolerances.") + key + " must be a positive number");
      }
      dst = t[key].get<double>();
    };
    real("dependence", cfg.tolerances.dependence);
    real("membership", cfg.tolerances.membership);
    real("kkt", cfg.tolerances.kkt);
    real("ill_conditioned", cfg.tolerances.ill_conditioned);
    real("dykstra", cfg.tolerances.dykstra);
    if (t.contains("dykstra_max_sweeps")) {
      if (!t["dykstra_max_sweeps"].is_number_integer() ||
          t["dykstra_max_sweeps"].get<int>() < 1) {
        bad("tolerances.dykstra_max_sweeps must be a positive integer");
      }
      cfg.tolerances.dykstra_max_sweeps = t["dykstra_max_sweeps"].get<int>();
    }
  }
  return cfg;
}

int cmd_project(const std::string& instance_path, int point_index,
                const std::string& method, const std::string& trace_path,
                const Tolerances& tol, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = read_instance(instance_path);
    if (inst.sets.empty()) {
      throw Error(ErrorKind::InvalidArgument, "instance has no sets");
    }
    if (point_index < 0 ||
        point_index >= static_cast<int>(inst.points.size())) {
      throw Error(ErrorKind::InvalidArgument,
                  "point index " + std::to_string(point_index) +
                      " out of range");
    }
    const Vector& x = inst.points[static_cast<std::size_t>(point_index)];

    Vector point;
    std::vector<double> lambda;
    std::vector<double> beta;
    std::string label = "null";
    std::string extra;
    if (method == "closed_form") {
      const ProjectionBreakdown b = closed_form(inst.sets, x, tol);
      point = b.point;
      lambda = b.lambda;
      beta = b.beta;
      if (b.region) label = std::string("\"") + to_string(*b.region) + "\"";
      if (b.dependent_case) {
        label = std::string("\"") + to_string(*b.dependent_case) + "\"";
      }
      extra = std::string(",\n  \"ill_conditioned\": ") +
              (b.ill_conditioned ? "true" : "false");
    } else if (method == "oracle") {
      const OracleResult r = oracle_project(inst.sets, x, tol);
      point = r.point;
      lambda = r.certificate.lambda;
      beta = r.certificate.beta;
      extra = ",\n  \"active\": [";
      for (std::size_t i = 0; i < r.active.size(); ++i) {
        extra += (i ? ", " : "") + std::to_string(r.active[i]);
      }
      extra += "]";
    } else if (method == "dykstra") {
      DykstraState state;
      const IterationTrace trace =
          dykstra(inst.sets, x, tol.dykstra_max_sweeps, tol.dykstra, {}, &state);
      point = trace.iterates.back();
      dykstra_multipliers(state, inst.sets, lambda, beta);
      extra = ",\n  \"sweeps\": " + std::to_string(trace.iterates.size() - 1) +
              ",\n  \"stop_reason\": \"" + to_string(trace.stop_reason) + "\"";
      if (!trace_path.empty()) write_file(trace_path, trace_to_csv(trace));
    } else {
      throw Error(ErrorKind::InvalidArgument,
                  "unknown method '" + method +
                      "' (expected closed_form, oracle or dykstra)");
    }

    const KktCertificate cert = kkt_check(inst.sets, x, point, lambda, beta, tol.kkt);
    out << "{\n  \"method\": \"" << method << "\",\n  \"point\": "
        << json_array(point) << ",\n  \"multipliers\": {\"lambda\": "
        << json_array(lambda) << ", \"beta\": " << json_array(beta)
        << "},\n  \"region_or_case\": " << label << extra
        << ",\n  \"certificate\": " << certificate_json(cert) << "\n}\n";
    return kExitOk;
  });
}

namespace {

struct Tally {
  int passed = 0;
  int total = 0;
  void add(bool ok) {
    ++total;
    if (ok) ++passed;
  }
};

Vector apply(const Constraint& c, const Vector& x, const Tolerances& tol) {
  return project(c, x, tol.membership);
}

}  // namespace

int cmd_experiment(const std::string& config_path, const std::string& out_dir,
                   const Tolerances& tol, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = parse_experiment_config(read_file(config_path), tol);
    const Tolerances& t = cfg.tolerances;
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);

    std::ostringstream rates, exact, dyk;
    rates << "trial,gamma,k,observed_error,bound_gamma_pow_k,ok\n";
    exact << "trial,tag,deviation,ok\n";
    dyk << "trial,sweeps,distance,ok\n";

    static constexpr BehaviorTag kCycle[] = {
        BehaviorTag::ExactComposition, BehaviorTag::LinearRateBAM,
        BehaviorTag::OneStepFeasible, BehaviorTag::ExactBothOrders};
    std::map<std::string, Tally> tallies;
    for (auto tag : kCycle) tallies[to_string(tag)];
    Tally dykstra_tally;

    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed),
                        static_cast<std::uint64_t>(trial)};
      Rng rng(seq);
      const BehaviorTag tag = cfg.case_filter ? *cfg.case_filter : kCycle[trial % 4];
      const PairSetup s = random_pair_for_behavior(rng, cfg.dim, tag);
      const Vector& x = s.x;
      const std::vector<Constraint> sets{s.first, s.second};
      const Halfspace& w2 = std::get<Halfspace>(s.second);
      const bool plane_first = kind_of(s.first) == SetKind::Hyperplane;
      const Vector target =
          plane_first
              ? project_hyperplane_halfspace(std::get<Hyperplane>(s.first), w2, x, t).point
              : project_halfspace_pair(std::get<Halfspace>(s.first), w2, x, t).point;
      auto forward = [&](const Vector& y) {
        return apply(s.second, apply(s.first, y, t), t);
      };
      bool ok = true;

      switch (tag) {
        case BehaviorTag::ExactComposition:
        case BehaviorTag::ExactBothOrders: {
          double dev = (forward(x) - target).norm();
          if (tag == BehaviorTag::ExactBothOrders) {
            dev = std::max(dev, (apply(s.first, apply(s.second, x, t), t) - target).norm());
          }
          ok = dev <= 1e-10;
          exact << trial << ',' << to_string(tag) << ',' << format_real(dev)
                << ',' << (ok ? "true" : "false") << '\n';
          break;
        }
        case BehaviorTag::OneStepFeasible: {
          const Vector y = forward(x);
          const auto& w1 = std::get<Halfspace>(s.first);
          const bool feasible = is_member(s.first, y, t.membership) &&
                                is_member(s.second, y, t.membership);
          const bool expect_equal =
              is_member(s.first, x, t.membership) ||
              is_member(s.second, x, t.membership) ||
              is_member(s.second, project_hyperplane(Hyperplane{w1.u, w1.eta}, x),
                        t.membership);
          const double dev = (y - target).norm();
          ok = feasible && (!expect_equal || dev <= 1e-10);
          exact << trial << ',' << to_string(tag) << ',' << format_real(dev)
                << ',' << (ok ? "true" : "false") << '\n';
          break;
        }
        case BehaviorTag::LinearRateBAM: {
          const double gamma = rate_gamma(normal_of(s.first), w2.u);
          const double initial = (x - target).norm();
          Vector xk = x;
          double gk = 1.0;
          for (int k = 1; k <= cfg.k_max; ++k) {
            xk = forward(xk);
            gk *= gamma;
            const double e = (xk - target).norm();
            const double bound = gk * initial;
            const bool row_ok = e <= bound + 1e-9;
            ok = ok && row_ok;
            rates << trial << ',' << format_real(gamma) << ',' << k << ','
                  << format_real(e) << ',' << format_real(bound) << ','
                  << (row_ok ? "true" : "false") << '\n';
          }
          const Mapping g = forward;
          const Mapping fix = [&](const Vector& y) {
            return plane_first ? project_hyperplane_halfspace(
                                     std::get<Hyperplane>(s.first), w2, y, t).point
                               : project_halfspace_pair(std::get<Halfspace>(s.first),
                                                        w2, y, t).point;
          };
          ok = ok && verify_bam(g, fix, gamma, {x}, cfg.k_max).all_hold();
          break;
        }
      }
      tallies[to_string(tag)].add(ok);

      const IterationTrace tr =
          dykstra(sets, x, t.dykstra_max_sweeps, t.dykstra);
      const double dist = (tr.iterates.back() - target).norm();
      const bool dok = dist <= 1e-6;
      dykstra_tally.add(dok);
      dyk << trial << ',' << tr.iterates.size() - 1 << ',' << format_real(dist)
          << ',' << (dok ? "true" : "false") << '\n';
    }

    std::ostringstream summary;
    summary << "{\n  \"seed\": " << cfg.seed << ",\n  \"dim\": " << cfg.dim
            << ",\n  \"trials\": " << cfg.trials << ",\n  \"k_max\": "
            << cfg.k_max << ",\n  \"case_filter\": "
            << (cfg.case_filter ? std::string("\"") + to_string(*cfg.case_filter) + "\""
                                : std::string("null"))
            << ",\n  \"pass_counts\": {";
    bool first = true;
    for (const auto& [name, tally] : tallies) {
      summary << (first ? "\n" : ",\n") << "    \"" << name
              << "\": {\"passed\": " << tally.passed
              << ", \"total\": " << tally.total << '}';
      first = false;
    }
    summary << "\n  },\n  \"dykstra\": {\"passed\": " << dykstra_tally.passed
            << ", \"total\": " << dykstra_tally.total << "}\n}\n";

    write_file(dir / "rates.csv", rates.str());
    write_file(dir / "exactness.csv", exact.str());
    write_file(dir / "dykstra.csv", dyk.str());
    write_file(dir / "summary.json", summary.str());
    out << summary.str();
    return kExitOk;
  });
}

int cmd_generate(std::uint64_t seed, int dim, const std::string& kind,
                 const std::string& out_file, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const auto k = instance_kind_from_string(kind);
    if (!k) {
      throw Error(ErrorKind::InvalidArgument,
                  "unknown kind '" + kind +
                      "' (expected pair_halfspace, hyperplane_halfspace or "
                      "hyperplane_system)");
    }
    const std::string text = instance_to_json(generate_instance(*k, dim, seed));
    if (out_file.empty()) {
      out << text;
    } else {
      write_file(out_file, text);
    }
    return kExitOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Projections onto hyperplanes, halfspaces and their intersections"};
  app.require_subcommand(1);

  std::string instance_path, method = "closed_form", config_path, kind, out_path;
  int point_index = 0;
  int dim = 2;
  std::uint64_t seed = 0;

  auto* project_cmd = app.add_subcommand("project", "Project one point of an instance");
  project_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
  project_cmd->add_option("--point", point_index, "Index into the instance points");
  project_cmd->add_option("--method", method, "closed_form, oracle or dykstra");
  project_cmd->add_option("--out", out_path, "Trace CSV (dykstra only)");

  auto* experiment_cmd = app.add_subcommand("experiment", "Run a verification sweep");
  experiment_cmd->add_option("--config", config_path, "Config JSON file")->required();
  experiment_cmd->add_option("--out", out_path, "Output directory");

  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
  generate_cmd->add_option("--seed", seed, "RNG seed");
  generate_cmd->add_option("--dim", dim, "Ambient dimension (>= 2)");
  generate_cmd->add_option("--kind", kind,
                           "pair_halfspace, hyperplane_halfspace or hyperplane_system")
      ->required();
  generate_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  const Tolerances tol = default_tolerances();
  if (project_cmd->parsed()) {
    return cmd_project(instance_path, point_index, method, out_path, tol, out, err);
  }
  if (experiment_cmd->parsed()) {
    return cmd_experiment(config_path, out_path, tol, out, err);
  }
  return cmd_generate(seed, dim, kind, out_path, out, err);
}

}  // namespace polyproj::cli
