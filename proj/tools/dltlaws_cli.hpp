/* Copyright 2026 The dltlaws Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "dltlaws/dltlaws.hpp"

namespace dlt::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInfeasible = 3,
  kVerificationFailed = 4,
  kIoError = 5,
  kAnchorFailed = 6,
  kInternalError = 7,
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class inconsistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string platform;
  std::optional<std::size_t> n;
  int model = 0;
  std::optional<double> f;
  std::string law = "amdahl";
  double gamma = 0.5;
  bool reverse = false;
  std::string out;
  std::string format;
  std::string gantt_path;
  std::string var = "n";
  double step = 0.05;
  std::string fault = "none";
};

inline Platform load_platform(const Options& o) {
  Platform p;
  if (auto builtin = builtin_platform(o.platform)) {
    p = *builtin;
  } else {
    std::ifstream in(o.platform);
    if (!in) throw io_error("cannot open platform file '" + o.platform + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw domain_error("platform file '" + o.platform + "' is not valid JSON: " + e.what());
    }
    p = platform_from_json(j);
  }
  if (o.n) p = p.truncated(*o.n);
  return p;
}

inline ScalingLaw parse_law(const Options& o) {
  if (o.law == "amdahl") return ScalingLaw::amdahl();
  if (o.law == "gustafson") return ScalingLaw::gustafson();
  return ScalingLaw::power_law(o.gamma);
}

// Inverts Eq.-8-style k for model 2 on identical children; used by
// `reproduce --fault` to show that anchors catch a broken model.
inline DltSpeedup inverted_model2_k(const Platform& p, Protocol protocol) {
  if (protocol == Protocol::Model2StaggeredStart) {
    if (auto h = homogeneous_params(p)) {
      const double k = h->omega0 * h->t_cp / (h->omega * h->t_cp + h->z * h->t_cm);
      return {1.0 + static_cast<double>(p.size()) / k, protocol, static_cast<double>(p.size())};
    }
  }
  return speedup(p, protocol);
}

inline void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw io_error("cannot write '" + o.out + "'");
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw io_error("cannot write '" + path.string() + "'");
}

struct CheckedPartition {
  OrderedPlatform ordered;
  Partition partition;
};

/// Recursion and linear solve must agree before anything is emitted.
inline CheckedPartition checked_partition(const Platform& platform, Protocol protocol) {
  CheckedPartition out{order_children(platform), {}};
  out.partition = partition_recursive(out.ordered.platform, protocol);
  const Partition oracle = partition_linear_solve(out.ordered.platform, protocol);
  for (std::size_t i = 0; i < oracle.alphas.size(); ++i) {
    const double a = out.partition.alphas[i];
    const double b = oracle.alphas[i];
    if (std::abs(a - b) > 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-15) {
      throw inconsistency_error("recursive and linear-solve partitions disagree at node " + std::to_string(i) +
                                ": " + format_double(a) + " vs " + format_double(b));
    }
  }
  return out;
}

inline int cmd_speedup(const Options& o, std::ostream& out) {
  validate_fraction(*o.f);
  const Platform p = load_platform(o);
  const Protocol protocol = protocol_from_number(o.model);
  const ScalingLaw law = parse_law(o);
  const double n = static_cast<double>(p.size());
  nlohmann::json j{{"platform", o.platform}, {"children", p.size()}, {"model", o.model},
                   {"protocol", to_string(protocol)}, {"f", *o.f}, {"law", law.name()}};
  if (law.kind() == ScalingLaw::Kind::PowerLaw) j["gamma"] = law.gamma();
  if (o.reverse) {
    const double effective = amdahl(*o.f, n);
    j["mode"] = "reverse";
    j["effective_children"] = effective;
    j["speedup"] = reverse_substitution(*o.f, p.size(), p, protocol);
  } else {
    const DltSpeedup dlt = speedup(p, protocol);
    j["mode"] = "forward";
    j["s_dlt"] = dlt.value;
    j["integrated"] = integrated_scaled(*o.f, dlt, law).value;
    j["reference"] = scaled_speedup(*o.f, n + 1.0, law);
  }
  if (o.format == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "platform:   " << o.platform << " (" << p.size() << " children)\n"
      << "model:      " << o.model << " (" << to_string(protocol) << ")\n"
      << "f:          " << format_double(*o.f) << "\n"
      << "law:        " << law.name() << "\n";
  if (o.reverse) {
    out << "effective n = amdahl(f, n): " << format_double(j["effective_children"].get<double>()) << "\n"
        << "S_DLT(effective n):         " << format_double(j["speedup"].get<double>()) << "\n";
  } else {
    out << "S_DLT:      " << format_double(j["s_dlt"].get<double>()) << "\n"
        << "integrated: " << format_double(j["integrated"].get<double>()) << "\n"
        << "reference (" << law.name() << ", n+1 processors): " << format_double(j["reference"].get<double>())
        << "\n";
  }
  return kOk;
}

inline int cmd_partition(const Options& o, std::ostream& out) {
  const Platform p = load_platform(o);
  const Protocol protocol = protocol_from_number(o.model);
  const auto checked = checked_partition(p, protocol);
  nlohmann::json j = checked.partition;
  j["order"] = checked.ordered.permutation;
  j["speedup"] = speedup_from_partition(checked.partition, checked.ordered.platform).value;
  emit(o, j.dump(2) + "\n", out);
  return kOk;
}

inline int cmd_gantt(const Options& o, std::ostream& out, std::ostream& err) {
  const Platform p = load_platform(o);
  const Protocol protocol = protocol_from_number(o.model);
  const auto checked = checked_partition(p, protocol);
  const GanttRecord record = gantt(checked.ordered.platform, protocol, checked.partition);
  const VerificationReport report = verify(checked.ordered.platform, protocol, record);
  if (!report.ok) {
    err << nlohmann::json(report).dump(2) << '\n';
    return kVerificationFailed;
  }
  if (o.format == "svg") {
    emit(o, to_svg(record, protocol), out);
  } else {
    emit(o, nlohmann::json(record).dump(2) + "\n", out);
  }
  return kOk;
}

inline int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const Platform p = order_children(load_platform(o)).platform;
  const Protocol protocol = protocol_from_number(o.model);
  nlohmann::json j;
  try {
    if (o.gantt_path == "-") {
      in >> j;
    } else {
      std::ifstream file(o.gantt_path);
      if (!file) throw io_error("cannot open gantt file '" + o.gantt_path + "'");
      file >> j;
    }
  } catch (const nlohmann::json::exception& e) {
    throw malformed_schedule_error(std::string("gantt is not valid JSON: ") + e.what());
  }
  const VerificationReport report = verify(p, protocol, gantt_from_json(j));
  if (o.format == "json") {
    out << nlohmann::json(report).dump(2) << '\n';
  } else {
    out << (report.ok ? "OK" : "INVALID") << "  makespan " << format_double(report.measured_makespan)
        << " s, speedup " << format_double(report.measured_speedup) << "\n";
    for (const auto& v : report.violations) {
      out << "  [" << to_string(v.rule) << "] node " << v.node << ": " << v.detail << "\n";
    }
  }
  return report.ok ? kOk : kVerificationFailed;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  SweepSpec spec;
  if (o.platform == "table1-hetero") {
    spec.kind = Table1Kind::Heterogeneous;
  } else if (o.platform == "table1-homo") {
    spec.kind = Table1Kind::Homogeneous;
  } else {
    throw domain_error("sweep runs on the built-in platforms table1-hetero and table1-homo");
  }
  if (o.var == "n") {
    spec.variable = ChildCountRange{1, o.n.value_or(kTable1Children)};
    spec.f = o.f.value_or(0.8);
  } else {
    spec.variable = FractionGrid{o.step};
    spec.n = o.n.value_or(20);
  }
  emit(o, to_csv(run_sweep(spec)), out);
  return kOk;
}

inline int cmd_reproduce(const Options& o, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path dir = o.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw io_error("cannot create output directory '" + o.out + "'");

  AnchorOptions opt;
  if (o.fault == "invert-model2-k") opt.speedup = inverted_model2_k;
  for (int fig : {3, 4, 5, 6}) {
    write_file(dir / ("fig" + std::to_string(fig) + ".csv"), to_csv(run_sweep(figure_spec(fig), opt.speedup)));
  }
  const auto anchors = check_anchors(opt);
  write_file(dir / "anchors.json", nlohmann::json(anchors).dump(2) + "\n");
  for (const auto& a : anchors) {
    out << (a.pass ? "PASS " : "FAIL ") << a.id << "  " << a.description << ": actual "
        << format_double(a.actual) << ", expected " << format_double(a.expected) << " +/- "
        << format_double(a.tolerance) << "\n";
    if (!a.pass && !a.detail.empty()) out << "       " << a.detail << "\n";
  }
  return all_pass(anchors) ? kOk : kAnchorFailed;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisible-load speedup models for star networks, integrated with Amdahl-family laws"};
  app.require_subcommand(1);
  Options o;

  auto platform_opts = [&](CLI::App* sub, bool required_model) {
    sub->add_option("--platform", o.platform, "table1-hetero, table1-homo, or a platform JSON file")->required();
    sub->add_option("-n", o.n, "use only the first n children");
    auto* m = sub->add_option("--model", o.model, "load distribution protocol")->check(CLI::IsMember({1, 2, 3}));
    if (required_model) m->required();
  };

  auto* speedup_cmd = app.add_subcommand("speedup", "S_DLT and its integration with a speedup law");
  platform_opts(speedup_cmd, true);
  speedup_cmd->add_option("-f", o.f, "parallelizable fraction")->required();
  speedup_cmd->add_option("--law", o.law)->check(CLI::IsMember({"amdahl", "gustafson", "power"}));
  speedup_cmd->add_option("--gamma", o.gamma, "power-law exponent, scale(n) = n^gamma");
  speedup_cmd->add_flag("--reverse", o.reverse, "substitute amdahl(f, n) for n in the homogeneous closed form");
  speedup_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* partition_cmd = app.add_subcommand("partition", "optimal load fractions and makespan (JSON)");
  platform_opts(partition_cmd, true);
  partition_cmd->add_option("--out", o.out);
  partition_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

  auto* gantt_cmd = app.add_subcommand("gantt", "verified timing diagram (JSON or SVG)");
  platform_opts(gantt_cmd, true);
  gantt_cmd->add_option("--out", o.out);
  gantt_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "svg"}));

  auto* verify_cmd = app.add_subcommand("verify", "check a timing diagram against a protocol");
  platform_opts(verify_cmd, true);
  verify_cmd->add_option("--gantt", o.gantt_path, "gantt JSON file, '-' for stdin")->required();
  verify_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "integrated speedup over n or f (CSV)");
  sweep_cmd->add_option("--platform", o.platform)->required()->check(CLI::IsMember({"table1-hetero", "table1-homo"}));
  sweep_cmd->add_option("--var", o.var, "swept variable")->check(CLI::IsMember({"n", "f"}));
  sweep_cmd->add_option("-n", o.n, "largest n (n sweep) or fixed n (f sweep, default 20)");
  sweep_cmd->add_option("-f", o.f, "fixed f for the n sweep (default 0.8)");
  sweep_cmd->add_option("--step", o.step, "f grid step");
  sweep_cmd->add_option("--out", o.out);
  sweep_cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv"}));

  auto* reproduce_cmd = app.add_subcommand("reproduce", "reference sweeps and anchor report");
  reproduce_cmd->add_option("--out", o.out, "output directory")->required();
  reproduce_cmd->add_option("--fault", o.fault, "deliberately break a model (testing aid)")
      ->check(CLI::IsMember({"none", "invert-model2-k"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }

  try {
    if (speedup_cmd->parsed()) return cmd_speedup(o, out);
    if (partition_cmd->parsed()) return cmd_partition(o, out);
    if (gantt_cmd->parsed()) return cmd_gantt(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, in, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (reproduce_cmd->parsed()) return cmd_reproduce(o, out);
  } catch (const infeasible_protocol_error& e) {
    err << "error: infeasible protocol at child " << e.index() << ": " << e.what() << "\n";
    return kInfeasible;
  } catch (const malformed_schedule_error& e) {
    err << "error: malformed schedule: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const inconsistency_error& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInternalError;
  } catch (const numeric_error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace dlt::cli
