#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "cli_support.hpp"

namespace fs = std::filesystem;
using namespace geoflow;

namespace {

struct Result {
    int code;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        root = fs::temp_directory_path() /
               ("geoflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    void TearDown() override { fs::remove_all(root); }

    Result run(const std::string& args) const {
        const fs::path err = root / "stderr.txt";
        const std::string cmd = std::string(GEOFLOW_CLI) + " " + args + " > /dev/null 2> " + err.string();
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, io::read_text(err)};
    }

    static std::string last_line(const std::string& s) {
        std::string t = s;
        while (!t.empty() && t.back() == '\n') t.pop_back();
        const auto k = t.rfind('\n');
        return k == std::string::npos ? t : t.substr(k + 1);
    }

    std::string out(const std::string& name) const { return "--out " + (root / name).string() + " "; }

    fs::path root;
};

}  // namespace

TEST_F(Cli, MissingInputIsConfigError) {
    const auto r = run(out("a") + "csf evolve --input " + (root / "absent.json").string() + " --stop-time 1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(last_line(r.err), "input-not-found");
    EXPECT_FALSE(fs::exists(root / "a" / "manifest.json"));
}

TEST_F(Cli, UnknownOptionIsConfigError) {
    const auto r = run("shape --radius 3");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(last_line(r.err), "invalid-argument");
}

TEST_F(Cli, BandViolationIsConfigError) {
    const auto r = run(out("b") + "vfe soliton --case x-axis --z0 1.5");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(last_line(r.err), "outside-admissible-band");
}

TEST_F(Cli, ExistingOutputNeedsForce) {
    ASSERT_EQ(run(out("c") + "shape").code, 0);
    const auto r = run(out("c") + "shape --kind ellipse --b 0.5");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(last_line(r.err), "output-exists");
    EXPECT_EQ(run(out("c") + "--force shape --kind ellipse --b 0.5").code, 0);
    const auto m = io::parse_json(io::read_text(root / "c" / "manifest.json"), "manifest");
    EXPECT_EQ(m["runs"].size(), 2u);
}

TEST_F(Cli, ManifestChecksumsMatchArtifacts) {
    ASSERT_EQ(run(out("d") + "shape --kind ellipse --a 2 --b 1 --n 96").code, 0);
    ASSERT_EQ(run(out("d") + "--force csf evolve --input " + (root / "d" / "ellipse.json").string() +
                  " --stop-time 0.2 --record-every 20")
                  .code,
              0);
    const auto m = io::parse_json(io::read_text(root / "d" / "manifest.json"), "manifest");
    const auto& last = m["runs"].back();
    EXPECT_EQ(last["command"], "csf evolve");
    EXPECT_EQ(last["parameters"]["stop-time"], "0.2");
    EXPECT_EQ(last["summary"]["stop_reason"], "stop-time");
    ASSERT_GT(last["artifacts"].size(), 2u);
    for (const auto& a : last["artifacts"]) {
        const std::string data = io::read_text(root / "d" / a["file"].get<std::string>());
        EXPECT_EQ(a["bytes"].get<std::size_t>(), data.size());
        EXPECT_EQ(a["sha256"], cli::sha256_hex(data));
    }
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
    for (const char* d : {"e1", "e2"}) {
        ASSERT_EQ(run(out(d) + "--format csv hasimoto soliton --nu 1 --tau0 0.3 --t 0.5 --s -10:10:257").code, 0);
    }
    for (const char* f : {"soliton.csv", "soliton_frames.json"}) {
        EXPECT_EQ(io::read_text(root / "e1" / f), io::read_text(root / "e2" / f)) << f;
    }
}

TEST_F(Cli, ShaOfKnownString) {
    EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(Cli, HelpExitsCleanly) { EXPECT_EQ(run("--help").code, 0); }
