#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "dustflame/io.hpp"

namespace {

namespace fs = std::filesystem;

std::string binary_path() {
    const char* bin = std::getenv("DUSTFLAME_BIN");
    return bin ? bin : "";
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "dustflame_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    REQUIRE(out);
    out << text;
}

const std::string kTinyRun = "model = primitive\n"
                             "x_right = 0.01\n"
                             "n_cells = 32\n"
                             "dt = 2e-5\n"
                             "t_end = 4e-4\n"
                             "snapshot_every = 10\n";

} // namespace

TEST_CASE("cli: exit codes and outputs") {
    if (binary_path().empty()) {
        SKIP("DUSTFLAME_BIN not set");
    }
    const fs::path dir = fresh_dir("cli");

    SECTION("run: success produces snapshots, report and manifest") {
        write_text(dir / "run.cfg", kTinyRun + "out_dir = " + (dir / "out").string() + "\n");
        CHECK(run_cli("run " + (dir / "run.cfg").string()) == 0);
        CHECK(fs::exists(dir / "out" / "snap_0.csv"));
        CHECK(fs::exists(dir / "out" / "snap_20.csv"));
        CHECK(fs::exists(dir / "out" / "report.txt"));
        CHECK(fs::exists(dir / "out" / "report.csv"));
        CHECK(fs::exists(dir / "out" / "manifest.json"));
        CHECK(fs::exists(dir / "out" / "front.csv"));
        CHECK(fs::exists(dir / "out" / "resolved.cfg"));
    }

    SECTION("run: config errors exit with 2") {
        write_text(dir / "bad.cfg", "model = primitive\ndt = -1\n");
        CHECK(run_cli("run " + (dir / "bad.cfg").string()) == 2);
        CHECK(run_cli("run " + (dir / "missing.cfg").string()) == 2);
        write_text(dir / "unknown.cfg", "model = primitive\nwhatever = 1\n");
        CHECK(run_cli("run " + (dir / "unknown.cfg").string()) == 2);
    }

    SECTION("compare: self comparison passes, tight threshold on distinct runs fails with 4") {
        write_text(dir / "a.cfg", kTinyRun + "out_dir = " + (dir / "a").string() + "\n");
        // Same physics, hotter ignition: profiles genuinely differ.
        write_text(dir / "b.cfg", kTinyRun + "ignition_theta = 1800\nout_dir = " +
                                      (dir / "b").string() + "\n");
        REQUIRE(run_cli("run " + (dir / "a.cfg").string()) == 0);
        REQUIRE(run_cli("run " + (dir / "b.cfg").string()) == 0);
        CHECK(run_cli("compare " + (dir / "a").string() + " " + (dir / "a").string() +
                      " --linf-max 1e-15") == 0);
        CHECK(run_cli("compare " + (dir / "a").string() + " " + (dir / "b").string() +
                      " --field theta --linf-max 1e-9") == 4);
        CHECK(run_cli("compare " + (dir / "a").string() + " " + (dir / "missing").string()) == 2);
    }

    SECTION("sweep: an unusable reference run exits with 3") {
        write_text(dir / "short.cfg",
                   "model = primitive\nx_right = 0.01\nn_cells = 32\ndt = 2e-5\nt_end = 0\n");
        CHECK(run_cli("sweep " + (dir / "short.cfg").string() + " --deltas 1e-4 --out-dir " +
                      (dir / "sweep").string()) == 3);
    }

    SECTION("cli usage errors exit with 2") {
        CHECK(run_cli("run") == 2);
        CHECK(run_cli("sweep " + (dir / "nope.cfg").string() + " --deltas bogus") == 2);
    }
}
