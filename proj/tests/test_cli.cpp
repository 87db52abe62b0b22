#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli() {
    const char* path = std::getenv("SEARCHMKT_CLI");
    REQUIRE(path != nullptr);
    return path;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "searchmkt_cli_tests";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, const fs::path& stdout_path = {}) {
    std::string cmd = cli() + " " + args;
    if (!stdout_path.empty())
        cmd += " > " + stdout_path.string();
    else
        cmd += " > /dev/null";
    cmd += " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path make_config(const std::string& name, const std::string& text) {
    const fs::path path = work_dir() / name;
    write_file(path, text);
    return path;
}

const std::string base_cfg =
    "N = 3\nv = 1\nc = 0.05\ntheta = 0, 0, 0.9, 0.1\n";

}  // namespace

TEST_CASE("solve emits the equilibrium row") {
    const fs::path cfg = make_config("base.cfg", base_cfg);
    const fs::path out = work_dir() / "solve.csv";
    CHECK(run_cli("solve --config " + cfg.string(), out) == 0);
    const std::string text = read_file(out);
    CHECK(text.rfind("kind,k,q,stable,marginal,price_paid,purchase_prob,avg_virtual_price,"
                     "searches,expenditure,surplus,indiff_residual,participation_slack,note",
                     0) == 0);
    CHECK(text.find("\nmixed,2,0.218379443") != std::string::npos);
}

TEST_CASE("--out matches stdout byte for byte") {
    const fs::path cfg = make_config("base.cfg", base_cfg);
    const fs::path via_stdout = work_dir() / "stdout.csv";
    const fs::path via_out = work_dir() / "written.csv";
    CHECK(run_cli("enumerate --config " + cfg.string(), via_stdout) == 0);
    CHECK(run_cli("enumerate --config " + cfg.string() + " --out " + via_out.string()) == 0);
    CHECK(read_file(via_stdout) == read_file(via_out));
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path a = work_dir() / "fig1_a.csv";
    const fs::path b = work_dir() / "fig1_b.csv";
    CHECK(run_cli("figure 1", a) == 0);
    CHECK(run_cli("figure 1", b) == 0);
    CHECK(read_file(a) == read_file(b));

    const fs::path f3 = work_dir() / "fig3.csv";
    const fs::path f4 = work_dir() / "fig4.csv";
    CHECK(run_cli("figure 3", f3) == 0);
    CHECK(run_cli("figure 4", f4) == 0);
    CHECK(read_file(f3) == read_file(f4));  // same table, two published views
}

TEST_CASE("outputs match the checked-in references") {
    const char* golden_env = std::getenv("SEARCHMKT_GOLDEN");
    REQUIRE(golden_env != nullptr);
    const fs::path golden(golden_env);
    const fs::path fig1_cfg =
        make_config("fig1.cfg", "N = 3\nv = 1\nc = 0.05\ntheta = 0, 0.05, 0.9, 0.05\n");

    const std::pair<std::string, std::string> cases[] = {
        {"figure1.csv", "figure 1"},
        {"figure2.csv", "figure 2"},
        {"figure3.csv", "figure 3"},
        {"example51.csv", "figure example51"},
        {"enumerate.csv", "enumerate --config " + fig1_cfg.string()},
    };
    for (const auto& [name, args] : cases) {
        CAPTURE(name);
        const fs::path got = work_dir() / ("golden_" + name);
        CHECK(run_cli(args, got) == 0);
        REQUIRE_MESSAGE(fs::exists(golden / name), "missing reference file");
        CHECK(read_file(got) == read_file(golden / name));
    }
}

TEST_CASE("exit codes by failure class") {
    const fs::path bad_syntax = make_config("bad_syntax.cfg", "N 3\n");
    const fs::path bad_theta =
        make_config("bad_theta.cfg", "N = 3\nv = 1\nc = 0.05\ntheta = 0, 0, 0.89, 0.1\n");
    const fs::path no_olig =
        make_config("no_olig.cfg", "N = 3\nv = 1\nc = 0.05\ntheta = 0.5, 0.5, 0, 0\n");
    const fs::path cost_big =
        make_config("cost_big.cfg", "N = 3\nv = 1\nc = 0.2\ntheta = 0, 0, 0.9, 0.1\n");
    const fs::path base = make_config("base.cfg", base_cfg);

    CHECK(run_cli("frobnicate") == 2);  // unknown subcommand
    CHECK(run_cli("solve") == 2);       // missing required --config
    CHECK(run_cli("solve --config " + (work_dir() / "absent.cfg").string()) == 2);
    CHECK(run_cli("solve --config " + bad_syntax.string()) == 2);
    CHECK(run_cli("solve --config " + bad_theta.string()) == 3);
    CHECK(run_cli("solve --config " + no_olig.string()) == 4);
    CHECK(run_cli("solve --config " + cost_big.string()) == 4);
    CHECK(run_cli("sweep-theta --config " + base.string()) == 3);  // shift keys absent
    CHECK(run_cli("sweep-cost --config " + base.string()) == 3);   // cost range absent
    CHECK(run_cli("hetero --config " + base.string()) == 3);       // lambda absent
    CHECK(run_cli("noisy --config " + base.string()) == 3);        // delta block absent
    CHECK(run_cli("figure 7") == 2);
}

TEST_CASE("noisy technology runs end to end") {
    const std::string good =
        "N = 3\nv = 1\nc = 0.02\ntheta = 0, 0, 0.9, 0.1\n"
        "delta:\n0.5, 0.3, 0.2\n0, 0.6, 0.4\n0, 0, 1\n";
    const fs::path cfg = make_config("noisy.cfg", good);
    const fs::path out = work_dir() / "noisy.csv";
    CHECK(run_cli("noisy --config " + cfg.string(), out) == 0);
    const std::string text = read_file(out);
    CHECK(text.rfind("q,stable,price_paid,purchase_prob,tech_cost,surplus", 0) == 0);
    CHECK(text.find(",1,") != std::string::npos);  // a stable root

    const std::string dominated =
        "N = 3\nv = 1\nc = 0.02\ntheta = 0, 0, 0.9, 0.1\n"
        "delta:\n0, 0.5, 0.5\n0, 0.6, 0.4\n0, 0, 1\n";
    const fs::path bad = make_config("noisy_bad.cfg", dominated);
    CHECK(run_cli("noisy --config " + bad.string()) == 3);
}

TEST_CASE("heterogeneous buyers run end to end") {
    const std::string text =
        "N = 3\nv = 1\nc = 0.02\ntheta = 0, 0, 0.7, 0.3\nlambda = 0.3\n";
    const fs::path cfg = make_config("het.cfg", text);
    const fs::path out = work_dir() / "het.csv";
    CHECK(run_cli("hetero --config " + cfg.string(), out) == 0);
    CHECK(read_file(out).rfind("q,mu,stable,price_paid,purchase_prob,surplus", 0) == 0);
}

TEST_CASE("simulation audit runs from the command line") {
    const fs::path cfg = make_config("base.cfg", base_cfg);
    const fs::path out = work_dir() / "validate.csv";
    CHECK(run_cli("validate --trials 20000 --seed 7 --config " + cfg.string(), out) == 0);
    const std::string text = read_file(out);
    CHECK(text.rfind("statistic,value,analytic,se,z", 0) == 0);
    CHECK(text.find("\nprice_paid,") != std::string::npos);
    CHECK(text.find("\nbenefit_gap_up,") != std::string::npos);
    CHECK(text.find("\nprofit_n2_d0,") != std::string::npos);
}
