// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lqg/config.hpp"
#include "lqg/io.hpp"

using namespace lqg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(LQGLAB_BIN) + " " + args).c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("lqgtest_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string data_rows(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("field snapshot round trip") {
    TempDir tmp;
    Vec h(3), mu(3);
    h << 0.25, -1.5, 3.75;
    mu << 1e-4, 2e-4, 3e-4;
    const std::string path = (tmp.path / "field.lqgf").string();
    write_field_snapshot(path, h, mu);

    // magic bytes and version on disk
    const std::string raw = slurp(path);
    REQUIRE(raw.size() == 4 + 4 + 4 + 6 * 8);
    CHECK(raw.substr(0, 4) == "LQGF");
    CHECK(raw[4] == 1);

    const FieldSnapshot snap = read_field_snapshot(path);
    CHECK(snap.version == kSnapshotVersion);
    CHECK(snap.h == h);
    CHECK(snap.mu == mu);

    std::ofstream bad(tmp.path / "bad.lqgf", std::ios::binary);
    bad << "NOPE";
    bad.close();
    CHECK_THROWS_AS(read_field_snapshot((tmp.path / "bad.lqgf").string()), ConfigError);
}

TEST_CASE("fnv1a fingerprint is stable") {
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(fnv1a("abc") == 16654208175385433931ULL);
    CHECK(hex64(fnv1a("abc")) == "e71fa2190541574b");
}

TEST_CASE("config validation and canonical form") {
    ExperimentConfig cfg;
    cfg.validate();
    CHECK(cfg.canonical().find("gamma=1") != std::string::npos);

    ExperimentConfig bad = cfg;
    bad.gamma = 2.5;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("gamma"), ConfigError);
    bad = cfg;
    bad.domain = "torus";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.window_lo = 0.5;
    bad.window_hi = 0.2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("cli determinism and persistence round trip") {
    TempDir tmp;
    const std::string out1 = (tmp.path / "a").string();
    const std::string out2 = (tmp.path / "b").string();
    const std::string base = "spectrum --gamma 1 --n 16 --seed 7 --out ";
    REQUIRE(run_cli(base + out1 + " > /dev/null 2>&1") == 0);
    REQUIRE(run_cli(base + out2 + " > /dev/null 2>&1") == 0);

    // byte-identical numeric outputs for identical config + seed
    CHECK(slurp(fs::path(out1) / "spectrum.csv") == slurp(fs::path(out2) / "spectrum.csv"));
    CHECK(slurp(fs::path(out1) / "field.lqgf") == slurp(fs::path(out2) / "field.lqgf"));

    // record lists outputs that exist and carry the same run id
    const auto record = nlohmann::json::parse(slurp(fs::path(out1) / "record_spectrum.json"));
    for (const auto& f : record["outputs"])
        CHECK(fs::exists(fs::path(out1) / f.get<std::string>()));
    const std::string csv_head = slurp(fs::path(out1) / "spectrum.csv").substr(0, 100);
    CHECK(csv_head.find(record["run_id"].get<std::string>()) != std::string::npos);

    // spacing from the stored spectrum equals the in-memory pipeline
    const std::string sp_args = " --window-lo 0.02 --window-hi 0.9 --out ";
    REQUIRE(run_cli("spacing --spectrum " + out1 + "/spectrum.csv" + sp_args +
                    (tmp.path / "sp_file").string() + " > /dev/null 2>&1") == 0);
    REQUIRE(run_cli("spacing --gamma 1 --n 16 --seed 7" + sp_args +
                    (tmp.path / "sp_mem").string() + " > /dev/null 2>&1") == 0);
    CHECK(data_rows(tmp.path / "sp_file" / "spacing.csv") ==
          data_rows(tmp.path / "sp_mem" / "spacing.csv"));
}

TEST_CASE("cli error taxonomy") {
    TempDir tmp;
    // configuration error names the offending field and exits 2
    const std::string err_file = (tmp.path / "err.txt").string();
    CHECK(run_cli("spectrum --gamma 2.5 --n 16 --out " + (tmp.path / "x").string() +
                  " 2> " + err_file) == 2);
    CHECK(slurp(err_file).find("gamma") != std::string::npos);

    CHECK(run_cli("spectrum --n 4 --out " + (tmp.path / "y").string() +
                  " > /dev/null 2>&1") == 2);
    CHECK(run_cli("kpz --x 0.5 --gamma 1.632993161855452 --out " +
                  (tmp.path / "k").string() + " > /dev/null 2>&1") == 0);
    const std::string kcsv = slurp(tmp.path / "k" / "kpz.csv");
    CHECK(kcsv.find("0.6513878188") != std::string::npos);
}

TEST_CASE("spectrum csv reload") {
    TempDir tmp;
    const std::string path = (tmp.path / "spec.csv").string();
    {
        CsvWriter w(path, "run_id=deadbeef config_hash=feed gamma=1.5 mu_total=2.25",
                    "n,lambda,mu_n");
        w.row({"1", "4.0", "0.25"});
        w.row({"2", "8.0", "0.125"});
    }
    const SpectrumCsv csv = read_spectrum_csv(path);
    CHECK(csv.gamma == 1.5);
    CHECK(csv.mu_total == 2.25);
    REQUIRE(csv.lambdas.size() == 2);
    CHECK(csv.lambdas[1] == 8.0);
}
