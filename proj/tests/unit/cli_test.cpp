#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hsm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t data_rows(const std::string& csv) {
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  return static_cast<std::size_t>(lines) - 1;  // minus header
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hsm_cli_test_" + name);
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"bounds", "--kind", "alpha", "--d", "10:5"}).code == 2);
  CHECK(run({"bounds", "--kind", "alpha", "--d", ""}).code == 2);
  CHECK(run({"bounds", "--kind", "bogus", "--d", "3"}).code == 2);
  CHECK(run({"verify", "nosuchcheck"}).code == 2);
  CHECK(run({"simulate", "--region", "interval", "--d", "2"}).code == 2);
  CHECK(run({"entropy", "--d", "1", "--n", "20"}).code == 2);
  CHECK(run({"entropy", "--alpha", "0.1", "--k", "2"}).code == 2);
  CHECK(run({"bounds", "--help"}).code == 0);
}

TEST_CASE("bound curves") {
  SUBCASE("alpha over 64 dimensions") {
    const Result r = run({"bounds", "--kind", "alpha", "--d", "1:64", "--lambda-rule", "proof"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("d,parameter,value,kind,main_term_only\n", 0) == 0);
    CHECK(data_rows(r.out) == 64);
  }
  SUBCASE("pressure over 50 values of c") {
    const Result r = run({"bounds", "--kind", "pressure", "--d", "400", "--c", "0.5493:0.6931:50"});
    REQUIRE(r.code == 0);
    CHECK(data_rows(r.out) == 50);
  }
  SUBCASE("out file also writes gnuplot data") {
    const auto csv = temp_path("curve.csv");
    const auto dat = temp_path("curve.dat");
    std::filesystem::remove(dat);
    const Result r = run({"bounds", "--kind", "cell", "--d", "10,20,40,80", "--out", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(dat));
    std::ifstream in(csv);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(data_rows(body.str()) == 4);
  }
  SUBCASE("json output") {
    const Result r = run({"bounds", "--kind", "entropy", "--d", "1:3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "entropy_lower");
    CHECK(j["main_term_only"] == true);
    CHECK(j["points"].size() == 3);
  }
}

TEST_CASE("simulate is deterministic and satisfies the free volume relation") {
  const std::vector<std::string> args{"simulate", "--d", "1", "--L", "10", "--lambda", "0.2",
                                      "--seed", "7", "--burn-in", "20000", "--samples", "2000"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  const double alpha = j["alpha"]["mean"];
  const double lfv = j["lambda_free_volume"]["mean"];
  const double se = std::hypot(j["alpha"]["stderr"].get<double>(),
                               j["lambda_free_volume"]["stderr"].get<double>());
  CHECK(std::abs(alpha - lfv) <= 3 * se);

  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--chains", "2", "--threads", "2"});
  std::vector<std::string> serial = args;
  serial.insert(serial.end(), {"--chains", "2", "--threads", "1"});
  CHECK(run(threaded).out == run(serial).out);
}

TEST_CASE("simulate dumps the final configuration") {
  const auto path = temp_path("config.csv");
  const Result r = run({"simulate", "--d", "2", "--n", "10", "--lambda", "1", "--burn-in", "1000",
                        "--samples", "10", "--dump-config", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "dim,k");
}

TEST_CASE("config file with flag override") {
  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream f(cfg);
    f << "# entropy run\nd = 1\nn=20\nk=2\n";
  }
  const Result from_file = run({"entropy", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out)["value"].get<double>() ==
        doctest::Approx(std::log(19.0 / 20.0)));
  const Result overridden = run({"entropy", "--config", cfg.string(), "--k", "3"});
  REQUIRE(overridden.code == 0);
  CHECK(nlohmann::json::parse(overridden.out)["value"].get<double>() ==
        doctest::Approx(std::log(18.0 / 20.0)));
  {
    std::ofstream f(cfg);
    f << "unknown_key=4\n";
  }
  CHECK(run({"entropy", "--config", cfg.string(), "--k", "3"}).code == 2);
  CHECK(run({"entropy", "--config", temp_path("missing.cfg").string(), "--k", "3"}).code == 2);
}

TEST_CASE("entropy values") {
  const Result r = run({"entropy", "--d", "1", "--n", "20", "--k", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(-0.105360516));
  CHECK(j["stderr"].get<double>() == 0.0);
  CHECK(j["method"] == "exact_1d");
  CHECK(j["reference"]["entropy_lower"]["main_term_only"] == true);
  const auto one = nlohmann::json::parse(run({"entropy", "--d", "3", "--n", "20", "--k", "1"}).out);
  CHECK(one["value"].get<double>() == 0.0);
  const double big = nlohmann::json::parse(run({"entropy", "--n", "20", "--k", "3"}).out)["value"];
  const double small = nlohmann::json::parse(run({"entropy", "--n", "15", "--k", "3"}).out)["value"];
  CHECK(big >= small);
}

TEST_CASE("verify subcommands") {
  const Result t = run({"verify", "tonks", "--tonks-samples", "20000", "--sigmas", "4"});
  CHECK(t.code == 0);
  const auto j = nlohmann::json::parse(t.out);
  CHECK(j["verdict"] == "pass");
  CHECK(j.contains("margin_sigmas"));

  const Result g = run({"verify", "geometric", "--d", "2", "--outer", "400", "--inner", "100"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["rhs"].get<double>() == doctest::Approx(6.0));

  const Result id = run({"verify", "identity31", "--d", "1", "--L", "10", "--lambda", "0.2",
                         "--burn-in", "20000", "--reps", "300"});
  CHECK(id.code == 0);

  const Result st = run({"verify", "stationarity", "--samples", "5000"});
  CHECK(st.code == 0);

  const Result lz = run({"verify", "logZ", "--cases", "4"});
  CHECK(lz.code == 0);
}
