// Copyright 2026 The Centering Authors
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

#include "centering/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "centering/corpus_io.hpp"
#include "centering/engine.hpp"
#include "centering/stats.hpp"

namespace centering::cli {

namespace {

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string out_path;
  std::string format = "plain";
  std::string segment_initial = "continue";
  bool strict = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open input '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string display_name(const std::string& path) {
  return path == "-" ? "<stdin>" : path;
}

// A file holds either one document or a top-level array of documents
// (the latter is what `analyze` emits for multiple inputs).
std::vector<AnnotatedDocument> load_documents(const std::string& text,
                                              const std::string& source,
                                              const ParseOptions& options) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json array;
    try {
      array = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source + ": " + e.what());
    }
    std::vector<AnnotatedDocument> docs;
    for (size_t i = 0; i < array.size(); ++i) {
      docs.push_back(parse_corpus(array[i].dump(), options,
                                  source + "[" + std::to_string(i) + "]"));
    }
    return docs;
  }
  std::vector<AnnotatedDocument> docs;
  docs.push_back(parse_corpus(text, options, source));
  return docs;
}

EngineOptions engine_options(const CommonOptions& opts) {
  EngineOptions eo;
  eo.segment_initial = opts.segment_initial == "none"
                           ? SegmentInitialConvention::LabelNone
                           : SegmentInitialConvention::TreatAsContinue;
  return eo;
}

ReportFormat report_format(const CommonOptions& opts) {
  if (opts.format == "csv") return ReportFormat::Delimited;
  if (opts.format == "md") return ReportFormat::Markdown;
  return ReportFormat::PlainTable;
}

void write_output(const CommonOptions& opts, const std::string& payload,
                  std::ostream& out) {
  if (opts.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output '" + opts.out_path + "'");
  file << payload;
}

void print_warnings(const AnnotatedDocument& doc, std::ostream& err) {
  for (const std::string& w : doc.warnings) err << "warning: " << w << "\n";
}

int cmd_analyze(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ParseOptions popts{opts.strict, false};
  const EngineOptions eopts = engine_options(opts);
  std::vector<std::string> serialized;
  for (const std::string& input : opts.inputs) {
    for (AnnotatedDocument& doc :
         load_documents(read_input(input), display_name(input), popts)) {
      print_warnings(doc, err);
      AnalysisResult result = analyze_discourse(doc.discourse, eopts);
      serialized.push_back(serialize_analysis(doc, result));
    }
  }
  if (serialized.size() == 1) {
    write_output(opts, serialized.front(), out);
  } else {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const std::string& s : serialized) {
      array.push_back(nlohmann::ordered_json::parse(s));
    }
    write_output(opts, array.dump(2) + "\n", out);
  }
  return 0;
}

int cmd_report(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ParseOptions popts{opts.strict, false};
  const EngineOptions eopts = engine_options(opts);
  std::vector<AnalysisResult> results;
  for (const std::string& input : opts.inputs) {
    for (AnnotatedDocument& doc :
         load_documents(read_input(input), display_name(input), popts)) {
      print_warnings(doc, err);
      results.push_back(analyze_discourse(doc.discourse, eopts));
    }
  }
  write_output(opts, report(results, report_format(opts)), out);
  return 0;
}

int cmd_validate(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ParseOptions popts{opts.strict, false};
  bool clean = true;
  for (const std::string& input : opts.inputs) {
    try {
      for (AnnotatedDocument& doc :
           load_documents(read_input(input), display_name(input), popts)) {
        print_warnings(doc, err);
        size_t units = 0;
        for (const Segment& s : doc.discourse.segments) units += s.units.size();
        out << "ok: " << display_name(input) << " (" << doc.discourse.entities.size()
            << " entities, " << units << " units)\n";
      }
    } catch (const CorpusError& e) {
      err << "error: " << e.what() << "\n";
      clean = false;
    }
  }
  return clean ? 0 : 1;
}

int cmd_felicity(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ParseOptions popts{opts.strict, false};
  const EngineOptions eopts = engine_options(opts);
  struct Row {
    std::string input, unit, kind, detail;
  };
  std::vector<Row> rows;
  for (const std::string& input : opts.inputs) {
    for (AnnotatedDocument& doc :
         load_documents(read_input(input), display_name(input), popts)) {
      print_warnings(doc, err);
      AnalysisResult result = analyze_discourse(doc.discourse, eopts);
      for (const FelicityFinding& f : result.felicity_findings) {
        rows.push_back(Row{display_name(input), f.unit_id, to_string(f.kind), f.detail});
      }
    }
  }

  std::ostringstream body;
  switch (report_format(opts)) {
    case ReportFormat::Delimited:
      body << "input,unit,kind,detail\n";
      for (const Row& r : rows) {
        body << r.input << "," << r.unit << "," << r.kind << ",\"" << r.detail << "\"\n";
      }
      break;
    case ReportFormat::Markdown:
      body << "| input | unit | kind | detail |\n| --- | --- | --- | --- |\n";
      for (const Row& r : rows) {
        body << "| " << r.input << " | " << r.unit << " | " << r.kind << " | "
             << r.detail << " |\n";
      }
      break;
    case ReportFormat::PlainTable:
      for (const Row& r : rows) {
        body << r.input << "\t" << r.unit << "\t" << r.kind << "\t" << r.detail << "\n";
      }
      break;
  }
  write_output(opts, body.str(), out);
  return 0;
}

int cmd_resolve(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ParseOptions popts{opts.strict, true};
  const EngineOptions eopts = engine_options(opts);
  nlohmann::ordered_json output = nlohmann::ordered_json::array();
  for (const std::string& input : opts.inputs) {
    for (AnnotatedDocument& doc :
         load_documents(read_input(input), display_name(input), popts)) {
      print_warnings(doc, err);
      ResolutionResult rr = resolve_pronouns(doc.discourse, eopts);
      nlohmann::ordered_json entry;
      entry["input"] = display_name(input);
      nlohmann::ordered_json assignments = nlohmann::ordered_json::array();
      const auto name = [&](EntityId id) {
        return doc.discourse.entities.at(static_cast<size_t>(id.value)).id;
      };
      for (const ResolvedMention& rm : rr.mentions) {
        nlohmann::ordered_json node;
        node["unit"] = rm.unit_id;
        node["mention"] = rm.mention_id;
        if (rm.unresolvable) {
          node["entity"] = nullptr;
          node["unresolvable"] = true;
        } else {
          node["entity"] = name(*rm.chosen);
          nlohmann::ordered_json candidates = nlohmann::ordered_json::array();
          for (EntityId c : rm.candidates) candidates.push_back(name(c));
          node["candidates"] = std::move(candidates);
          node["transition"] = to_string(rm.resulting_transition);
        }
        assignments.push_back(std::move(node));
      }
      entry["assignments"] = std::move(assignments);
      output.push_back(std::move(entry));
    }
  }
  if (output.size() == 1) {
    write_output(opts, output.front().dump(2) + "\n", out);
  } else {
    write_output(opts, output.dump(2) + "\n", out);
  }
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions* opts, bool with_format) {
  cmd->add_option("inputs", opts->inputs, "input documents ('-' for stdin)")
      ->required()
      ->expected(-1);
  cmd->add_option("--out", opts->out_path, "write output to PATH instead of stdout");
  cmd->add_flag("--strict", opts->strict, "reject unknown fields");
  cmd->add_option("--segment-initial", opts->segment_initial,
                  "transition convention after an unspecified Cb")
      ->check(CLI::IsMember({"continue", "none"}));
  if (with_format) {
    cmd->add_option("--format", opts->format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "md"}));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Centering-theory discourse analysis over annotated corpora"};
  app.require_subcommand(1);

  CommonOptions analyze_opts, report_opts, validate_opts, felicity_opts, resolve_opts;
  CLI::App* analyze = app.add_subcommand("analyze", "compute Cf/Cb/Cp and transitions");
  add_common(analyze, &analyze_opts, false);
  CLI::App* rep = app.add_subcommand("report", "aggregate distribution tables and chi-square tests");
  add_common(rep, &report_opts, true);
  CLI::App* validate = app.add_subcommand("validate", "check documents against the schema");
  add_common(validate, &validate_opts, false);
  CLI::App* felicity = app.add_subcommand("felicity", "list null/strong subject usage findings");
  add_common(felicity, &felicity_opts, true);
  CLI::App* resolve = app.add_subcommand("resolve", "assign referents to unresolved pronouns");
  add_common(resolve, &resolve_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_opts, out, err);
    if (rep->parsed()) return cmd_report(report_opts, out, err);
    if (validate->parsed()) return cmd_validate(validate_opts, out, err);
    if (felicity->parsed()) return cmd_felicity(felicity_opts, out, err);
    if (resolve->parsed()) return cmd_resolve(resolve_opts, out, err);
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const AnnotationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace centering::cli
