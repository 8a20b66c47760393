// Command-line front end: homology tables, E_2 pages, oracle runs and profile
// management for the dihedral Artin group engine.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bredon/oracle.hpp"
#include "bredon/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBounded = 2;
constexpr int kExitInput = 3;
constexpr int kExitRange = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bredon::input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

/// Ring names resolve to builtins first, then to files (directly or through
/// the BREDON_PROFILE_PATH search path, with or without a .profile suffix).
bredon::KTheoryProfile resolve_ring(const std::string& name) {
  if (bredon::is_builtin_ring(name)) return bredon::builtin_profile(name);
  std::vector<std::string> candidates = {name, name + ".profile"};
  if (const char* env = std::getenv("BREDON_PROFILE_PATH")) {
    std::string paths(env);
    std::size_t pos = 0;
    while (pos <= paths.size()) {
      std::size_t colon = paths.find(':', pos);
      std::string dir =
          paths.substr(pos, colon == std::string::npos ? colon : colon - pos);
      if (!dir.empty()) {
        candidates.push_back(dir + "/" + name);
        candidates.push_back(dir + "/" + name + ".profile");
      }
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
  }
  for (const auto& c : candidates)
    if (file_exists(c)) return bredon::load_profile(read_file(c));
  throw bredon::input_error("unknown ring: " + name +
                            " (not a builtin, not a profile file)");
}

struct QRange {
  int lo = 0;
  int hi = 0;
};

QRange parse_q(const std::string& s) {
  std::size_t sep = s.find("..");
  try {
    if (sep == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    QRange r{std::stoi(s.substr(0, sep)), std::stoi(s.substr(sep + 2))};
    if (r.lo > r.hi) throw bredon::input_error("empty q range: " + s);
    return r;
  } catch (const std::invalid_argument&) {
    throw bredon::input_error("bad q value: " + s);
  } catch (const std::out_of_range&) {
    throw bredon::input_error("bad q value: " + s);
  }
}

std::string render(const bredon::HomologyReport& report, const std::string& format,
                   bool grid) {
  if (format == "records") return bredon::render_records(report);
  if (format == "tablemarkup") return bredon::render_table_markup(report);
  if (format == "text") return grid ? bredon::render_grid(report) : bredon::render_text(report);
  throw bredon::input_error("unknown format: " + format);
}

int report_status(const bredon::HomologyReport& report) {
  if (report.has_errors()) return kExitRange;
  if (report.has_bounded()) return kExitBounded;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bredon homology of dihedral Artin groups for the family of "
               "virtually cyclic subgroups, with K-theory coefficients"};
  app.require_subcommand(1);

  std::string ring, q_spec, format = "text", catalog_path, center_sign = "plus";
  int n = 3;
  int k_max = 8;

  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--ring", ring, "builtin ring name or profile file")->required();
    cmd->add_option("--n", n, "index of the dihedral Artin group (n >= 2)")->required();
    if (with_format)
      cmd->add_option("--format", format, "text | records | tablemarkup")
          ->default_val("text");
    cmd->add_option("--catalog", catalog_path, "class catalog file");
    cmd->add_option("--center-sign", center_sign,
                    "coupling convention for the central class: plus | minus")
        ->default_val("plus");
  };

  CLI::App* compute = app.add_subcommand(
      "compute", "compute the H_i^vc table for one q or a q range");
  add_common(compute, true);
  compute->add_option("--q", q_spec, "degree q or inclusive range a..b")->required();

  CLI::App* e2page =
      app.add_subcommand("e2page", "render the E_2 page over a q range");
  add_common(e2page, true);
  e2page->add_option("--q", q_spec, "inclusive range a..b (or one q)")->required();

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare closed forms against SNF truncations");
  add_common(oracle, false);
  oracle->add_option("--q", q_spec, "degree q")->required();
  oracle->add_option("--k", k_max, "largest truncation size")->default_val(8);

  CLI::App* profiles = app.add_subcommand("profiles", "profile management");
  CLI::App* profiles_list = profiles->add_subcommand("list", "list builtin rings");
  CLI::App* profiles_show = profiles->add_subcommand("show", "render one profile");
  std::string show_name;
  profiles_show->add_option("name", show_name, "ring name or file")->required();
  CLI::App* profiles_validate =
      profiles->add_subcommand("validate", "check a profile document");
  std::string validate_path;
  profiles_validate->add_option("file", validate_path, "profile file")->required();
  profiles->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitOk;
  }

  try {
    bredon::EngineOptions opts;
    if (center_sign == "minus")
      opts.center_coupling_minus = true;
    else if (center_sign != "plus")
      throw bredon::input_error("--center-sign must be plus or minus");

    if (compute->parsed() || e2page->parsed()) {
      bredon::KTheoryProfile profile = resolve_ring(ring);
      bredon::ArtinParameters params = bredon::ArtinParameters::for_index(n);
      bredon::ClassCatalog catalog =
          catalog_path.empty()
              ? bredon::default_class_catalog(params)
              : bredon::catalog_from_document(read_file(catalog_path), params);
      QRange range = parse_q(q_spec);
      bredon::HomologyReport report =
          bredon::e2_page(profile, params, range.lo, range.hi, catalog, opts);
      std::cout << render(report, format, e2page->parsed());
      return report_status(report);
    }

    if (oracle->parsed()) {
      bredon::KTheoryProfile profile = resolve_ring(ring);
      bredon::ArtinParameters params = bredon::ArtinParameters::for_index(n);
      QRange range = parse_q(q_spec);
      if (range.lo != range.hi)
        throw bredon::input_error("oracle takes a single q");
      bredon::StabilityResult scan = bredon::stability_scan(
          profile, range.lo, params, 1, static_cast<std::size_t>(k_max), opts);
      bool all = true;
      for (const auto& cell : scan.cells) {
        std::cout << cell.name << ": ";
        switch (cell.verdict) {
          case bredon::Verdict::matches:
            std::cout << "stable, matches (k=1.." << k_max << ")\n";
            break;
          case bredon::Verdict::mismatch:
            all = false;
            std::cout << "MISMATCH " << cell.detail << "\n";
            break;
          case bredon::Verdict::skipped:
            all = false;
            std::cout << "skipped: " << cell.detail << "\n";
            break;
        }
      }
      return all ? kExitOk : 1;
    }

    if (profiles_list->parsed()) {
      std::cout << "Z\nF2\nFq(<prime power>)\nZ[C2]\nZ[C2xC2]\nZ[C4]\n";
      return kExitOk;
    }
    if (profiles_show->parsed()) {
      std::cout << bredon::profile_to_document(resolve_ring(show_name));
      return kExitOk;
    }
    if (profiles_validate->parsed()) {
      try {
        bredon::KTheoryProfile p = bredon::load_profile(read_file(validate_path));
        std::cout << "ok: " << p.name << " (q_range " << p.q_min << ".." << p.q_max
                  << (p.regular ? ", regular" : "") << ")\n";
        return kExitOk;
      } catch (const bredon::error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kExitInput;
      }
    }
  } catch (const bredon::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const bredon::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const bredon::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
