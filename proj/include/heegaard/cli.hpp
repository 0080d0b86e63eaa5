// Copyright 2026 The Heegaard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end, kept in a header so tests can drive it in process.
//
//   heegaard analyze <file> [--json] [--dot out.dot] [--threads N] [--limit N]
//   heegaard template a1 a2 a3 a4 [--json] [--emit out.json] [--dot out.dot]
//   heegaard classify <search> [--bound N] [--g N] [--d N] [--threads N] [--json]
//
// Exit codes: 0 ok, 2 input error, 3 validation error, 4 resource limit.

#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heegaard/classify.hpp"
#include "heegaard/core.hpp"
#include "heegaard/genus2_template.hpp"
#include "heegaard/io.hpp"
#include "heegaard/report.hpp"

namespace heegaard {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitValidation = 3, kExitResource = 4 };

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
  if (!f) throw ParseError("failed writing " + path);
}

inline std::string search_text(const SearchReport& r) {
  return table({{"search", r.name},
                {"parameters", r.parameters.dump()},
                {"examined", std::to_string(r.examined)},
                {"witnesses", std::to_string(r.witness_count)},
                {"holds", r.holds ? "yes" : "no"},
                {"verdict", r.verdict},
                {"details", r.details.dump()}});
}

inline SearchReport cubic_min_report(int g) {
  SearchReport r;
  r.name = "cubic-min";
  r.parameters["g"] = g;
  const int64_t least = cubic_min_matchings(g);
  const Integer f = voorhoeve_bound(g);
  r.details["min_matchings"] = least;
  r.details["voorhoeve_bound"] = heegaard::to_json(f);
  r.holds = Integer(least) >= f;
  r.verdict = r.holds ? "minimum matching count meets the lower bound f(g)" : "minimum is below f(g)";
  return r;
}

inline SearchReport bounds_report(int d) {
  SearchReport r;
  r.name = "bounds";
  r.parameters["d"] = d;
  auto [n, m] = finiteness_bounds(d);
  r.details["max_vertices"] = n;
  r.details["max_edges"] = m;
  r.holds = true;
  r.verdict = "n <= 2(d-2), m <= 3(d-2)";
  return r;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heegaard diagram toolkit: strong diagrams, templates and classification searches"};
  app.require_subcommand(1);

  bool json = false;
  unsigned threads = 0;
  int limit = Limits{}.permanent_size;

  std::string path, dot_path, emit_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a diagram file");
  analyze_cmd->add_option("path", path, "Diagram file (JSON)")->required();
  analyze_cmd->add_flag("--json", json, "Print JSON");
  analyze_cmd->add_option("--dot", dot_path, "Write the intersection graph as DOT");
  analyze_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  analyze_cmd->add_option("--limit", limit, "Largest permanent size")->check(CLI::Range(1, 62));

  std::vector<std::string> slopes;
  auto* template_cmd = app.add_subcommand("template", "Build the genus-2 template H(a1,a2,a3,a4)");
  template_cmd->add_option("slopes", slopes, "Four slopes p/q or p")
      ->required()
      ->expected(4);
  template_cmd->add_flag("--json", json, "Print JSON");
  template_cmd->add_option("--emit", emit_path, "Write the diagram file");
  template_cmd->add_option("--dot", dot_path, "Write the intersection graph as DOT");

  std::string search;
  int64_t bound = -1;
  int g = -1, d = 8;
  auto* classify_cmd = app.add_subcommand("classify", "Run a classification search");
  classify_cmd->add_option("search", search, "genus3, borromean, polya-zero, cubic-min, bounds or matching-bound")
      ->required()
      ->check(CLI::IsMember({"genus3", "borromean", "polya-zero", "cubic-min", "bounds", "matching-bound"}));
  classify_cmd->add_option("--bound", bound, "Entry bound");
  classify_cmd->add_option("--g", g, "Genus");
  classify_cmd->add_option("--d", d, "Matching-count bound");
  classify_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  classify_cmd->add_flag("--json", json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Limits limits = Limits::from_env();
  limits.permanent_size = limit;
  limits.threads = threads;

  try {
    if (*analyze_cmd) {
      auto H = parse_validate(read_file(path));
      auto report = analyze(H, limits);
      if (!dot_path.empty()) detail::write_file(dot_path, to_dot(H.intersection_graph()));
      out << (json ? to_json(report).dump(2) + "\n" : to_text(report));
    } else if (*template_cmd) {
      TemplateParams t = make_template(parse_slope(slopes[0]), parse_slope(slopes[1]), parse_slope(slopes[2]),
                                       parse_slope(slopes[3]));
      auto report = template_report(t);
      out << (json ? to_json(report).dump(2) + "\n" : to_text(report));
      if (!dot_path.empty()) detail::write_file(dot_path, to_dot(template_graph(t)));
      if (!emit_path.empty()) detail::write_file(emit_path, to_json(template_diagram(t)).dump(2) + "\n");
    } else {
      SearchReport r;
      const unsigned workers = limits.worker_count();
      if (search == "genus3")
        r = verify_genus3_case();
      else if (search == "borromean")
        r = borromean_search(bound < 0 ? 16 : bound);
      else if (search == "polya-zero")
        r = polya_zero_search(g < 0 ? 3 : g, bound < 0 ? 3 : static_cast<int>(bound), workers);
      else if (search == "cubic-min")
        r = detail::cubic_min_report(g < 0 ? 2 : g);
      else if (search == "bounds")
        r = detail::bounds_report(d);
      else
        r = matching_bound_sweep(d, workers);
      out << (json ? r.to_json().dump(2) + "\n" : detail::search_text(r));
    }
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionViolated& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateTemplate& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SizeLimitExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace heegaard
