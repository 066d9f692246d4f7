#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ptw/wigner_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ptwigner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ptw::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ptw_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(f, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("spectrum writes monotone energies") {
  const auto dir = scratch("spectrum");
  const auto r = run({"spectrum", "--levels", "10", "--out", dir.string()});
  REQUIRE(r.code == ptw::cli::kExitOk);
  const auto rows = lines(dir / "spectrum.csv");
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "n,E_n");
  CHECK(rows[1] == "0,20000");
  double last = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(e > last);
    last = e;
  }
  CHECK(fs::exists(dir / "spectrum.csv.meta.json"));
  CHECK_FALSE(fs::exists(dir / "eigenfunctions.csv"));
}

TEST_CASE("eigenfunction samples are optional") {
  const auto dir = scratch("eigen");
  REQUIRE(run({"spectrum", "--levels", "3", "--eigen-samples", "33", "--out", dir.string()}).code == 0);
  CHECK(lines(dir / "eigenfunctions.csv").size() == 34);
}

TEST_CASE("validation errors exit with code 2") {
  CHECK(run({"spectrum", "--levels", "100000"}).code == ptw::cli::kExitValidation);
  CHECK(run({"spectrum", "--rho", "0.5"}).code == ptw::cli::kExitValidation);
  CHECK(run({"wigner", "--grid", "8x8"}).code == ptw::cli::kExitValidation);
  CHECK(run({"wigner", "--grid", "64by64"}).code == ptw::cli::kExitValidation);
  CHECK(run({"wigner", "--frac", "2/4"}).code == ptw::cli::kExitValidation);
  CHECK(run({"wigner", "--beta", "1.5"}).code == ptw::cli::kExitValidation);
  CHECK(run({"scaling", "--betas", "0.5"}).code == ptw::cli::kExitValidation);
  CHECK(run({"sensitivity", "--samples", "10"}).code == ptw::cli::kExitValidation);
  CHECK(run({"no-such-command"}).code == ptw::cli::kExitValidation);
  CHECK(run({}).code == ptw::cli::kExitValidation);
  const auto r = run({"spectrum", "--bogus"});
  CHECK(r.code == ptw::cli::kExitValidation);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("runtime errors exit with code 1") {
  // A regular file where the output directory should go.
  const auto blocker = scratch("blocker");
  std::ofstream(blocker.string()) << "file";
  CHECK(run({"spectrum", "--out", (blocker / "sub").string()}).code == ptw::cli::kExitRuntime);
  fs::remove(blocker);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == ptw::cli::kExitOk);
  CHECK(r.out.find("sensitivity") != std::string::npos);
}

TEST_CASE("wigner binary and csv agree and are deterministic") {
  const auto a = scratch("wigner_a");
  const auto b = scratch("wigner_b");
  REQUIRE(run({"wigner", "--grid", "64x48", "--frac", "1/8", "--out", a.string()}).code == 0);
  REQUIRE(run({"wigner", "--grid", "64x48", "--frac", "1/8", "--out", b.string()}).code == 0);

  const auto field = ptw::read_wigner_binary(a / "wigner.bin");
  CHECK(field.grid().nx() == 64);
  CHECK(field.grid().np() == 48);
  const auto rows = lines(a / "wigner.csv");
  REQUIRE(rows.size() == 1 + 64 * 48);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 48; ++j) {
      const auto& row = rows[1 + i * 48 + j];
      const double w = std::stod(row.substr(row.rfind(',') + 1));
      worst = std::max(worst, std::abs(w - field(i, j)));
    }
  }
  CHECK(worst == 0.0);

  for (const char* name : {"wigner.bin", "wigner.csv", "wigner.json", "wigner.bin.meta.json", "wigner.csv.meta.json",
                           "wigner.json.meta.json"}) {
    INFO(name);
    REQUIRE(fs::exists(a / name));
    const auto sa = slurp(a / name);
    auto sb = slurp(b / name);
    // Sidecars and JSON embed the output directory; compare the rest byte for byte.
    const auto strip = [&](std::string s, const fs::path& dir) {
      for (auto pos = s.find(dir.string()); pos != std::string::npos; pos = s.find(dir.string()))
        s.replace(pos, dir.string().size(), "<out>");
      return s;
    };
    CHECK(strip(sa, a) == strip(sb, b));
  }
}

TEST_CASE("direct path matches the fast path") {
  const auto a = scratch("direct_a");
  const auto b = scratch("direct_b");
  REQUIRE(run({"wigner", "--grid", "32x32", "--out", a.string()}).code == 0);
  REQUIRE(run({"wigner", "--grid", "32x32", "--direct", "--out", b.string()}).code == 0);
  const auto fa = ptw::read_wigner_binary(a / "wigner.bin");
  const auto fb = ptw::read_wigner_binary(b / "wigner.bin");
  CHECK((fa.values() - fb.values()).cwiseAbs().maxCoeff() < 1e-6);
  const auto meta = json::parse(slurp(b / "wigner.json"));
  CHECK(meta["config"]["direct"] == true);
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "run.ini") << "levels=5\nrho=60\nkappa=60\n";
  REQUIRE(run({"spectrum", "--config", (dir / "run.ini").string(), "--levels", "3", "--out", dir.string()}).code == 0);
  const auto rows = lines(dir / "spectrum.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == "0,28800");
  const auto meta = json::parse(slurp(dir / "spectrum.csv.meta.json"));
  CHECK(meta["config"]["rho"] == 60.0);
  CHECK(meta["config"]["levels"] == 3);
}

TEST_CASE("scaling emits a fit") {
  const auto dir = scratch("scaling");
  REQUIRE(run({"scaling", "--betas", "0.5,0.6,0.7", "--out", dir.string()}).code == 0);
  CHECK(lines(dir / "scaling.csv").size() == 4);
  const auto fit = json::parse(slurp(dir / "fit.json"));
  CHECK(fit["slope"].get<double>() < 0.0);
  CHECK(fit.contains("r_squared"));
}

TEST_CASE("revival-check reports residuals") {
  const auto dir = scratch("revival");
  REQUIRE(run({"revival-check", "--out", dir.string()}).code == 0);
  const auto doc = json::parse(slurp(dir / "revival.json"));
  CHECK(doc["cat_residual"].get<double>() < 1e-10);
  CHECK(doc["compass_residual"].get<double>() < 1e-10);

  const auto odd = scratch("revival_odd");
  REQUIRE(run({"revival-check", "--rho", "50", "--kappa", "46", "--out", odd.string()}).code == 0);
  CHECK(json::parse(slurp(odd / "revival.json"))["cat_residual"].is_null());
}

TEST_CASE("sensitivity with too short a range reports a null period") {
  const auto dir = scratch("sensitivity");
  const auto r = run({"sensitivity", "--lambda-max", "0.02", "--samples", "50", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto doc = json::parse(slurp(dir / "sensitivity.json"));
  CHECK(doc["period"].is_null());
  CHECK(lines(dir / "overlap.csv").size() == 51);
}
