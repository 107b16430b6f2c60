#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "snelfs/json_io.hpp"

namespace fs = std::filesystem;
using snelfs::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "snelfs_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("SNELFS_CLI_PATH");
    REQUIRE(bin != nullptr);
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string("\"") + bin + "\" " + args + " > \"" + out_path.string() +
                            "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

// A schedule small enough for test-speed training: 4*4 stages, one epoch each.
fs::path tiny_config_path() {
    static const fs::path path = [] {
        const fs::path p = work_dir() / "tiny_config.json";
        std::ofstream out(p);
        out << R"({
  "dim": 4,
  "hidden": [4],
  "lr": 0.001,
  "l1": 0.01,
  "l2": 0.01,
  "schedule": {
    "lambda_s": {"min": 0.01, "max": 0.2, "steps": 2, "cycles": 1},
    "lambda_a": {"min": 0.01, "max": 0.2, "steps": 2, "cycles": 1},
    "epochs_per_stage": 1
  }
})";
        return p;
    }();
    return path;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("cli gen writes the csv, truth sidecar and manifest") {
    const fs::path csv = work_dir() / "xor.csv";
    RunResult r = run_cli("gen xor --n 200 --m 10 --seed 3 --out \"" + csv.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("wrote") != std::string::npos);

    REQUIRE(fs::exists(csv));
    const std::string content = read_file(csv);
    CHECK(count_lines(content) == 201); // header + 200 rows
    CHECK(content.rfind("f0,f1,", 0) == 0);
    CHECK(content.find("target") != std::string::npos);

    const json truth = snelfs::load_json_file((work_dir() / "xor.truth.json").string());
    CHECK(truth.at("n_features") == 10);
    CHECK(truth.at("true_features").size() == 2);
    CHECK(truth.at("params").at("generator") == "xor");

    const json manifest = snelfs::load_json_file((work_dir() / "xor.manifest.json").string());
    CHECK(manifest.at("tool") == "snelfs");
    CHECK(manifest.contains("created_at"));
    CHECK(manifest.at("outputs").size() == 2);
}

TEST_CASE("cli gen output is byte-identical per seed") {
    const fs::path a = work_dir() / "gen_a.csv";
    const fs::path b = work_dir() / "gen_b.csv";
    CHECK(run_cli("gen madelon --n 80 --m 15 --n-informative 3 --seed 9 --out \"" + a.string() +
                  "\"").exit_code == 0);
    CHECK(run_cli("gen madelon --n 80 --m 15 --n-informative 3 --seed 9 --out \"" + b.string() +
                  "\"").exit_code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(work_dir() / "gen_a.truth.json") == read_file(work_dir() / "gen_b.truth.json"));

    const fs::path c = work_dir() / "gen_c.csv";
    CHECK(run_cli("gen madelon --n 80 --m 15 --n-informative 3 --seed 10 --out \"" + c.string() +
                  "\"").exit_code == 0);
    CHECK(read_file(a) != read_file(c));
}

TEST_CASE("cli select trains, reports and feeds the success scorer") {
    const fs::path report = work_dir() / "select" / "report.json";
    fs::create_directories(report.parent_path());
    RunResult r = run_cli("select --gen madelon --n 100 --m 12 --n-informative 3 --seed 5"
                          " --config \"" + tiny_config_path().string() + "\" --train-seed 7"
                          " --top-k 3 --out \"" + report.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("val_accuracy") != std::string::npos);

    REQUIRE(fs::exists(report));
    const json rj = snelfs::load_json_file(report.string());
    CHECK(rj.at("task") == "binary");
    CHECK(rj.at("n_features") == 12);
    CHECK(rj.at("epochs_executed") == 16);
    CHECK(rj.at("saliency").at("features").size() == 12);
    CHECK(rj.at("selected").at("features").size() == 3);
    CHECK(rj.at("config").at("dim") == 4);

    const fs::path history = work_dir() / "select" / "report.history.csv";
    REQUIRE(fs::exists(history));
    const std::string hist = read_file(history);
    CHECK(count_lines(hist) == 17); // header + 16 epochs
    CHECK(hist.rfind("epoch,stage,lambda_s,lambda_a,", 0) == 0);

    const fs::path truth = work_dir() / "select" / "report.truth.json";
    REQUIRE(fs::exists(truth));

    RunResult s = run_cli("success --report \"" + report.string() + "\" --truth \"" +
                          truth.string() + "\" --top-k 3 --out \"" +
                          (work_dir() / "select" / "suc.json").string() + "\"");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("Suc = ") != std::string::npos);

    const json suc = snelfs::load_json_file((work_dir() / "select" / "suc.json").string());
    const double value = suc.at("success").get<double>();
    CHECK(value <= 1.0);
    CHECK(value >= -0.5);
    CHECK(suc.at("selected").size() == 3);
}

TEST_CASE("cli select reports are byte-identical across reruns") {
    const fs::path dir = work_dir() / "repeat";
    fs::create_directories(dir);
    const std::string base = "select --gen xor --n 80 --m 8 --seed 2"
                             " --config \"" + tiny_config_path().string() + "\" --train-seed 3"
                             " --out \"";
    CHECK(run_cli(base + (dir / "one.json").string() + "\"").exit_code == 0);
    CHECK(run_cli(base + (dir / "two.json").string() + "\"").exit_code == 0);
    CHECK(read_file(dir / "one.json") == read_file(dir / "two.json"));
    CHECK(read_file(dir / "one.history.csv") == read_file(dir / "two.history.csv"));
}

TEST_CASE("cli select fans out over seeds into a summary") {
    const fs::path dir = work_dir() / "fanout";
    fs::create_directories(dir);
    const fs::path summary = dir / "multi.json";
    RunResult r = run_cli("select --gen madelon --n 80 --m 10 --n-informative 2 --clusters-per-class 2 --seed 4"
                          " --config \"" + tiny_config_path().string() + "\""
                          " --seeds 1,2 --out \"" + summary.string() + "\"");
    CHECK(r.exit_code == 0);

    REQUIRE(fs::exists(summary));
    const json sj = snelfs::load_json_file(summary.string());
    REQUIRE(sj.at("runs").size() == 2);
    CHECK(sj.at("seeds") == json::array({1, 2}));
    CHECK(fs::exists(dir / "multi.seed1.json"));
    CHECK(fs::exists(dir / "multi.seed2.json"));
    CHECK(fs::exists(dir / "multi.seed1.history.csv"));

    const json r1 = snelfs::load_json_file((dir / "multi.seed1.json").string());
    CHECK(r1.at("config").at("seed") == 1);
}

TEST_CASE("cli select reads csv input") {
    const fs::path csv = work_dir() / "from_csv.csv";
    CHECK(run_cli("gen linreg --n 60 --m 6 --n-informative 2 --seed 11 --out \"" + csv.string() +
                  "\"").exit_code == 0);
    const fs::path report = work_dir() / "from_csv_report.json";
    RunResult r = run_cli("select --data \"" + csv.string() + "\""
                          " --config \"" + tiny_config_path().string() + "\""
                          " --top-k 2 --out \"" + report.string() + "\"");
    CHECK(r.exit_code == 0);
    const json rj = snelfs::load_json_file(report.string());
    CHECK(rj.at("task") == "regression");
    CHECK(rj.at("metric") == "neg_mse"); // derived from the task
}

TEST_CASE("cli cv evaluates a selection method over folds") {
    const fs::path out = work_dir() / "cv.json";
    RunResult r = run_cli("cv --gen madelon --n 60 --m 8 --n-informative 2 --clusters-per-class 2 --seed 6"
                          " --method fscore --classifier gnb --k-folds 4 --n-select 2"
                          " --out \"" + out.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("mean F1 over seeds") != std::string::npos);

    const json cj = snelfs::load_json_file(out.string());
    CHECK(cj.at("method") == "fscore");
    CHECK(cj.at("classifier") == "gnb");
    CHECK(cj.at("k_folds") == 4);
    REQUIRE(cj.at("runs").size() == 1);
    CHECK(cj.at("runs")[0].at("fold_scores").size() == 4);
    const double mean = cj.at("mean_f1").get<double>();
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);

    RunResult rnd = run_cli("cv --gen madelon --n 60 --m 8 --n-informative 2 --clusters-per-class 2 --seed 6"
                            " --method random --classifier knn --k-folds 4 --n-select 2");
    CHECK(rnd.exit_code == 0);
}

TEST_CASE("cli exit codes distinguish usage, data and internal failures") {
    CHECK(run_cli("--version").exit_code == 0);
    CHECK(run_cli("nonsense").exit_code == 2);              // unknown subcommand
    CHECK(run_cli("select").exit_code == 2);                // neither --data nor --gen
    CHECK(run_cli("gen blob --out /tmp/x.csv").exit_code == 2); // unknown generator
    CHECK(run_cli("gen xor --out /tmp/x.csv --n 10 --m 1").exit_code == 2); // too few features

    // Missing and malformed data files map to the data-error code.
    CHECK(run_cli("select --data /nonexistent.csv --config \"" + tiny_config_path().string() +
                  "\"").exit_code == 3);
    const fs::path bad = work_dir() / "bad.csv";
    std::ofstream(bad) << "a,b\n1,2\n"; // no target column
    CHECK(run_cli("select --data \"" + bad.string() + "\" --config \"" +
                  tiny_config_path().string() + "\"").exit_code == 3);

    // A report that is not a report.
    const fs::path not_report = work_dir() / "not_report.json";
    std::ofstream(not_report) << "{}";
    CHECK(run_cli("success --report \"" + not_report.string() + "\" --truth \"" +
                  not_report.string() + "\" --top-k 2").exit_code == 3);

    // Conflicting sources are a usage error.
    CHECK(run_cli("select --data x.csv --gen xor").exit_code == 2);
}

TEST_CASE("cli success rejects mismatched report and truth") {
    const fs::path dir = work_dir() / "mismatch";
    fs::create_directories(dir);
    const std::string cfg = tiny_config_path().string();
    CHECK(run_cli("select --gen xor --n 60 --m 8 --seed 1 --config \"" + cfg + "\" --out \"" +
                  (dir / "eight.json").string() + "\"").exit_code == 0);
    CHECK(run_cli("select --gen xor --n 60 --m 9 --seed 1 --config \"" + cfg + "\" --out \"" +
                  (dir / "nine.json").string() + "\"").exit_code == 0);
    // Truth sidecar of the 9-feature run against the 8-feature report.
    CHECK(run_cli("success --report \"" + (dir / "eight.json").string() + "\" --truth \"" +
                  (dir / "nine.truth.json").string() + "\" --top-k 2").exit_code == 3);
}
