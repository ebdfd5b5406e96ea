#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("BIHARM_CLI");
    REQUIRE_MESSAGE(env != nullptr, "BIHARM_CLI must point at the CLI binary");
    return env;
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "biharm_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    std::string cmd = "\"" + cli_path() + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("residual sweep: proper biharmonic profile stays below tolerance") {
    fs::path out = work_dir() / "residual.csv";
    int rc = run("residual --m 4 --dom r --cod \"sin(a)\" --alpha \"2*atan(r)\" "
                 "--grid 0.1:10:100 --out " + out.string());
    CHECK(rc == 0);
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 101);
    CHECK(rows[0] == std::vector<std::string>{"r", "F", "res_F", "res_expanded"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 4);
        CHECK(std::abs(std::stod(rows[i][2])) <= 1e-8);
    }
    // round trip: the 17-significant-digit text reproduces the double exactly
    double r1 = std::stod(rows[1][0]);
    CHECK(r1 == 0.1);
}

TEST_CASE("byte-identical reruns") {
    fs::path a = work_dir() / "det_a.csv";
    fs::path b = work_dir() / "det_b.csv";
    std::string args = "residual --m 4 --dom r --cod \"sin(a)\" --alpha \"2*atan(c^2*r)\" "
                       "--c 1.7 --grid 0.2:5:40 --out ";
    CHECK(run(args + a.string()) == 0);
    CHECK(run(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("cone angles") {
    fs::path out = work_dir() / "cone.json";
    CHECK(run("cone --action \"SO(2)xSO(3)\" --out " + out.string()) == 0);
    json rep = json::parse(slurp(out));
    REQUIRE(rep["angles"].is_array());
    REQUIRE(rep["angles"].size() == 1);
    CHECK(rep["angles"][0].get<double>() == doctest::Approx(0.95532).epsilon(1e-5));
    CHECK(rep["d"].get<int>() == 2);
}

TEST_CASE("classification verification report") {
    fs::path out = work_dir() / "classify.json";
    CHECK(run("verify-classification --out " + out.string()) == 0);
    json rep = json::parse(slurp(out));
    REQUIRE(rep["cases"].is_array());
    REQUIRE(rep["cases"].size() == 9);
    int verified = 0, none = 0;
    for (const auto& row : rep["cases"]) {
        REQUIRE(row.contains("case"));
        REQUIRE(row.contains("classification"));
        std::string status = row["status"].get<std::string>();
        if (status == "verified") ++verified;
        if (status == "no-solution") ++none;
    }
    CHECK(verified == 5);
    CHECK(none == 4);
    CHECK(rep["cases"][1]["case"] == "1B");
    CHECK(rep["cases"][1]["classification"] == "proper-biharmonic");
    CHECK(rep["cases"][3]["status"] == "no-solution");
}

TEST_CASE("dirichlet driver") {
    fs::path out = work_dir() / "dirichlet.json";
    CHECK(run("dirichlet --rstar 1.5707963267948966 --out " + out.string()) == 0);
    json rep = json::parse(slurp(out));
    CHECK(rep["c"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["residual_max"].get<double>() <= 1e-8);
}

TEST_CASE("profile flow polyline") {
    fs::path out = work_dir() / "flow.csv";
    CHECK(run("profile --kind cmc --action \"SO(2)xSO(2)\" --f0 0 --x0 1 --y0 1 "
              "--theta0 0.78539816339744828 --slen 0.5 --step 0.001 --out " + out.string()) == 0);
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] == std::vector<std::string>{"s", "x", "y", "theta", "k_d", "mean_f", "A2",
                                              "res_normal", "res_tangential"});
    // minimal ray: theta constant, residuals zero
    CHECK(std::stod(rows.back()[3]) == doctest::Approx(0.78539816339744828).epsilon(1e-10));
    CHECK(std::abs(std::stod(rows.back()[8])) <= 1e-10);
}

TEST_CASE("bienergy value") {
    fs::path out = work_dir() / "bienergy.json";
    CHECK(run("bienergy --m 4 --dom r --cod a --alpha \"r^2\" --a 1 --b 2 --panels 64 --out " +
              out.string()) == 0);
    json rep = json::parse(slurp(out));
    CHECK(rep["value"].get<double>() == doctest::Approx(46.875).epsilon(1e-10));
}

TEST_CASE("table lists all fourteen actions") {
    fs::path out = work_dir() / "table.json";
    CHECK(run("table --out " + out.string()) == 0);
    json rep = json::parse(slurp(out));
    REQUIRE(rep["actions"].size() == 14);
    bool has_u5 = false;
    for (const auto& row : rep["actions"])
        if (row["label"] == "U(5)") {
            has_u5 = true;
            CHECK(row["n"] == 20);
            CHECK(row["mults"] == json::array({5, 4, 5, 4}));
        }
    CHECK(has_u5);
}

TEST_CASE("config file with flag overrides") {
    fs::path cfgp = work_dir() / "run.json";
    fs::path out1 = work_dir() / "cfg_a.csv";
    fs::path out2 = work_dir() / "cfg_b.csv";
    {
        json cfg;
        cfg["m"] = 4;
        cfg["dom"] = "r";
        cfg["cod"] = "sin(a)";
        cfg["alpha"] = "2*atan(c^2*r)";
        cfg["c"] = 0.5;
        cfg["grid"] = "0.5:2:10";
        std::ofstream(cfgp) << cfg.dump(2);
    }
    CHECK(run("residual --config " + cfgp.string() + " --out " + out1.string()) == 0);
    CHECK(run("residual --config " + cfgp.string() + " --c 2.0 --out " + out2.string()) == 0);
    auto a = parse_csv(slurp(out1));
    auto b = parse_csv(slurp(out2));
    REQUIRE(a.size() == b.size());
    CHECK(a[1][1] != b[1][1]);  // the override changed the profile
}

TEST_CASE("model descriptors and extra parameters") {
    fs::path out = work_dir() / "descr.csv";
    int rc = run("residual --m 4 --dom \"{\\\"m\\\":4,\\\"warp\\\":\\\"r\\\"}\" "
                 "--cod \"{\\\"sphere\\\":1}\" --alpha \"k*atan(r)\" --param k=2 "
                 "--grid 0.5:2:5 --out " + out.string());
    CHECK(rc == 0);
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 6);
    // alpha = 2 atan(r) is the proper biharmonic profile: res_F stays tiny
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs(std::stod(rows[i][2])) <= 1e-10);
    // dimension disagreement between --m and the descriptor is a config error
    CHECK(run("residual --m 5 --dom \"{\\\"m\\\":4,\\\"warp\\\":\\\"r\\\"}\" "
              "--cod \"sin(a)\"") == 1);
}

TEST_CASE("exit codes") {
    CHECK(run("residual --grid 5:1:10") == 1);                     // start >= end
    CHECK(run("residual --grid 0.1:10:1") == 1);                   // count < 2
    CHECK(run("residual --alpha \"2*atan(\"") == 1);               // syntax error
    CHECK(run("cone --action \"NoSuchGroup\"") == 1);              // unknown label
    CHECK(run("dirichlet --rstar 3.5") == 2);                      // numerical failure
    CHECK(run("profile --kind warp") == 1);                        // bad enum
    CHECK(run("nonsense") == 1);                                   // unknown subcommand
}
