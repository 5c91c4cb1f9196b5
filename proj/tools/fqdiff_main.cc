// Copyright 2026 The fqdiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run experiment specs and sweeps, build point sets,
// dump spectra.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fqdiff/experiment.h"
#include "fqdiff/pointspace.h"
#include "fqdiff/spectral.h"

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fqdiff::Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes via `fn` to `path`, or to stdout when path is empty or "-".
template <typename Fn>
void WriteTo(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw fqdiff::Error("cannot write '" + path + "'");
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqdiff: difference sets, distance sets and Fourier decay over F_q^d"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Print a per-check summary to stderr");

  std::string spec_path, out_path, csv_path;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run an experiment spec");
  run->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
  run->add_option("-o,--output", out_path, "JSON-lines report (overrides spec.output)");
  run->add_option("--csv", csv_path, "CSV summary (overrides spec.csv)");

  std::string template_path, q_list, seed_list = "0", jsonl_path;
  auto* sweep = app.add_subcommand("sweep", "Run a template over fields and seeds");
  sweep->add_option("template", template_path, "Experiment template (JSON)")->required();
  sweep->add_option("--q", q_list, "Fields: orders or p^n, comma separated")->required();
  sweep->add_option("--seeds", seed_list, "Seeds: e.g. 0..19 or 1,2,3");
  sweep->add_option("-o,--output", out_path, "CSV output (default stdout)");
  sweep->add_option("--jsonl", jsonl_path, "Also write the JSON-lines reports");
  sweep->add_option("-j,--jobs", jobs, "Parallel cells")->check(CLI::PositiveNumber);

  std::string descriptor;
  auto* build = app.add_subcommand("build-set", "Materialize a set descriptor");
  build->add_option("descriptor", descriptor,
                    "Descriptor JSON (inline or a path) with field, d and kind")
      ->required();
  build->add_option("-o,--output", out_path, "points.json (default stdout)");

  std::string points_path;
  bool naive = false;
  auto* spectrum = app.add_subcommand("spectrum", "Dump the Fourier spectrum of a point set");
  spectrum->add_option("points", points_path, "points.json")->required();
  spectrum->add_option("-o,--output", out_path, "spectrum.csv (default stdout)");
  spectrum->add_flag("--naive", naive, "Use direct summation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const fqdiff::ExperimentSpec spec = fqdiff::ParseSpec(ReadFile(spec_path));
      const fqdiff::RunResult result = fqdiff::Run(spec);
      WriteTo(out_path.empty() ? spec.output : out_path,
              [&](std::ostream& os) { fqdiff::WriteJsonLines(result.reports, os); });
      const std::string csv = csv_path.empty() ? spec.csv : csv_path;
      if (!csv.empty()) {
        WriteTo(csv, [&](std::ostream& os) { fqdiff::WriteCsv(result.reports, os); });
      }
      if (verbosity > 0) {
        for (const auto& r : result.reports) {
          std::cerr << r.check << ": " << fqdiff::StatusName(r.status)
                    << " constant=" << r.constant << "\n";
        }
      }
      return result.ExitCode();
    }
    if (*sweep) {
      const fqdiff::ExperimentSpec templ = fqdiff::ParseSpec(ReadFile(template_path));
      fqdiff::SweepOptions options;
      options.fields = fqdiff::ParseFieldList(q_list);
      options.seeds = fqdiff::ParseSeedList(seed_list);
      options.parallelism = jobs;
      const fqdiff::RunResult result = fqdiff::Sweep(templ, options);
      WriteTo(out_path, [&](std::ostream& os) { fqdiff::WriteCsv(result.reports, os); });
      if (!jsonl_path.empty()) {
        WriteTo(jsonl_path,
                [&](std::ostream& os) { fqdiff::WriteJsonLines(result.reports, os); });
      }
      if (verbosity > 0) {
        std::cerr << result.reports.size() << " rows\n";
      }
      return result.ExitCode();
    }
    if (*build) {
      const std::string text =
          descriptor.starts_with("{") ? descriptor : ReadFile(descriptor);
      nlohmann::json desc;
      try {
        desc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw fqdiff::SpecError(std::string("descriptor is not valid JSON: ") + e.what());
      }
      if (!desc.is_object() || !desc.contains("field") || !desc.contains("d")) {
        throw fqdiff::SpecError("descriptor needs \"field\" and \"d\"");
      }
      auto space = fqdiff::Space::Create(
          fqdiff::Field::Parse(desc["field"].get<std::string>()), desc["d"].get<int>());
      const fqdiff::PointSet set = fqdiff::BuildSet(space, desc, std::nullopt, "descriptor");
      WriteTo(out_path, [&](std::ostream& os) { os << fqdiff::PointSetToJson(set) << '\n'; });
      if (verbosity > 0) std::cerr << set.card() << " points\n";
      return 0;
    }
    if (*spectrum) {
      const fqdiff::PointSet set = fqdiff::PointSetFromJson(ReadFile(points_path));
      const fqdiff::Spectrum sp = naive ? fqdiff::DftNaive(set) : fqdiff::DftFast(set);
      WriteTo(out_path, [&](std::ostream& os) { fqdiff::WriteSpectrumCsv(sp, os); });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "fqdiff: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
