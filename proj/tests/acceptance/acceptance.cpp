// Acceptance suite: one PASS/FAIL line per criterion.
//
//   conicquad_acceptance <conicquad> <test-data-dir> <work-dir> [--update-goldens]
//
// Criteria 1-7 are run by `conicquad selftest`, which owns their thresholds;
// this program re-emits its table with the thresholds spelled out. Criterion 8
// needs selftest to exit 0 and the SVGs of the canonical jobs to match the
// checked-in goldens byte for byte.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Criterion {
  const char* id;
  const char* summary;
};

// Keep in step with the battery in tools/lib/battery.cpp.
constexpr std::array<Criterion, 7> kBattery{{
    {"exactness", "reference integral: 15 monomials exact, 1000 quartics within 1e-15 rel of rationals, < 1 s"},
    {"analytic", "disc, half-disc, segment within 1e-10; annulus band within 1e-9; < 1 s"},
    {"complement", "500 instances over 10 classes, I(f) + I(-f) = I(T) within 1e-10 rel, < 30 s"},
    {"oracle", "200 nondegenerate instances vs oracle at 1e-8: gap <= 1e-7 rel or within bound, < 300 s"},
    {"subdivision", "300 instances: <= 11 pieces, all free, tiling within 1e-12 rel, free cut edges, < 30 s"},
    {"equivariance", "100 instances x 5 rigid motions, drift <= 1e-9 rel, < 60 s"},
    {"degenerate", "strip and crossing-line layouts vs oracle within 1e-8 rel, < 10 s"},
}};

constexpr std::array<const char*, 5> kGoldenJobs{"disjoint", "seven_pieces", "crossing_lines", "hyperbola",
                                                 "parabola"};

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Runs a shell command; returns the exit status and captured stdout.
std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  return {std::istreambuf_iterator<char>(in), {}};
}

void report(bool pass, int index, const std::string& id, const std::string& summary, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << index << "] " << id << ": " << summary << "\n"
            << "        " << detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: conicquad_acceptance <conicquad> <test-data-dir> <work-dir> [--update-goldens]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path data = argv[2];
  const fs::path work = argv[3];
  const bool update = argc > 4 && std::string(argv[4]) == "--update-goldens";

  // Selftest table lines look like "PASS  <id>  <seconds> s  <detail>".
  const auto [selftest_code, table] = capture(quote(cli) + " selftest 2>&1");
  std::map<std::string, std::pair<bool, std::string>> rows;
  std::istringstream lines(table);
  for (std::string line; std::getline(lines, line);) {
    std::istringstream ls(line);
    std::string verdict, id;
    ls >> verdict >> id;
    if (verdict != "PASS" && verdict != "FAIL") continue;
    std::string rest;
    std::getline(ls, rest);
    const auto start = rest.find_first_not_of(' ');
    rows[id] = {verdict == "PASS", start == std::string::npos ? "" : rest.substr(start)};
  }

  int failures = 0;
  int index = 1;
  for (const auto& c : kBattery) {
    const auto it = rows.find(c.id);
    const bool pass = it != rows.end() && it->second.first;
    failures += !pass;
    report(pass, index++, c.id, c.summary, it == rows.end() ? "no result from selftest" : it->second.second);
  }

  fs::create_directories(work / "svg");
  std::vector<std::string> mismatched;
  for (const char* name : kGoldenJobs) {
    const fs::path job = data / "jobs" / (std::string(name) + ".json");
    const fs::path svg = work / "svg" / (std::string(name) + ".svg");
    const fs::path golden = data / "golden" / (std::string(name) + ".svg");
    const auto [code, out] = capture(quote(cli) + " subdivide " + quote(job.string()) + " --svg " +
                                     quote(svg.string()) + " 2>&1");
    if (code != 0) {
      mismatched.push_back(std::string(name) + " (exit " + std::to_string(code) + ")");
      continue;
    }
    if (update) fs::copy_file(svg, golden, fs::copy_options::overwrite_existing);
    const std::string produced = read_file(svg);
    if (produced.empty() || produced != read_file(golden)) mismatched.push_back(name);
  }
  std::string detail = "selftest exit " + std::to_string(selftest_code) + "; ";
  if (mismatched.empty()) {
    detail += std::to_string(kGoldenJobs.size()) + " SVGs identical to goldens";
  } else {
    detail += "SVG mismatch:";
    for (const auto& m : mismatched) detail += " " + m;
  }
  const bool cli_pass = selftest_code == 0 && mismatched.empty();
  failures += !cli_pass;
  report(cli_pass, index, "cli-golden", "selftest exits 0 and subdivide SVGs match goldens on 5 jobs", detail);

  std::cout << (failures == 0 ? "acceptance: all criteria passed" : "acceptance: " + std::to_string(failures) +
                                                                       " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
