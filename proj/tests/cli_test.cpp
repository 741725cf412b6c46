// Runs the fodeflab binary named by FODEFLAB_BIN and inspects its JSON.
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct Result {
    int exit_code = -1;
    std::string out;
    json j() const { return json::parse(out); }
};

std::string quote(const std::string& s)
{
    std::string q = "'";
    for (char c : s)
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Result run(const std::string& args, const std::string& env = {})
{
    const char* bin = std::getenv("FODEFLAB_BIN");
    if (!bin)
        return {};
    std::string cmd = env + " " + quote(bin) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

const std::string kP3 = quote(R"({"n":3,"edges":[[0,1],[1,2]]})");
const std::string kK3 = quote(R"({"n":3,"edges":[[0,1],[1,2],[0,2]]})");

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        if (!std::getenv("FODEFLAB_BIN"))
            GTEST_SKIP() << "FODEFLAB_BIN not set";
    }
};

} // namespace

TEST_F(Cli, CheckAndMeasure)
{
    Result r = run("check " + kP3 + " " + quote("(exists x (forall y (or (= x y) (adj x y))))"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.j()["holds"].get<bool>());
    r = run("measure " + quote("(exists x (forall y (adj x y)))"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.j()["qr"], 2);
    EXPECT_EQ(r.j()["alt"], 1);
    EXPECT_EQ(r.j()["prefix"], "EA");
}

TEST_F(Cli, DgameAndDefine)
{
    Result r = run("dgame " + kP3 + " " + kK3);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.j()["D"], 2);
    EXPECT_EQ(r.j()["trace"].size(), 2u);
    r = run("define " + kP3 + " --bound 4");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_LE(r.j()["qr"].get<int>(), 4);
    EXPECT_GT(r.j()["certificate"]["false_on_others"].get<int>(), 0);
}

TEST_F(Cli, TreesTablesAndTowers)
{
    Result r = run("tree gen --catalog --depth 2");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.j()["max_order"], json({1, 2, 4}));
    r = run("succinct tower --i 4");
    EXPECT_EQ(r.j()["tower"], "65536");
    EXPECT_EQ(r.j()["log_star"], 4);
    r = run("--format csv succinct table --n-max 3 --bound 4");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.rfind("n,", 0), 0u);
}

TEST_F(Cli, MachineRunAndVerify)
{
    Result r = run("tm verify " + quote("s1 B write a s2") + " --added 5");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.j()["body_holds"].get<bool>());
    r = run("tm run " + quote("s1 B right s1;s1 a write a s2") + " --max-steps 20");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.j()["halted"].get<bool>());
    r = run("tm model " + quote("s1 B right s1;s1 a write a s2") + " --max-steps 20");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_EQ(r.j()["error"], "cap");
}

TEST_F(Cli, UniversalCheck)
{
    Result r = run("universal check --m 2 --sample 10");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.j()["misses"], 0);
}

TEST_F(Cli, PlayReplayDuplicatorLoses)
{
    auto path = std::filesystem::temp_directory_path() / "fodeflab_replay.txt";
    {
        std::ofstream f(path);
        f << "# spoiler moves\nG 0\nG 2\n";
    }
    // Pebbling the two ends of P3 forces a non-edge K3 cannot copy.
    Result r = run("play " + kP3 + " " + kK3 + " --k 2 --role spoiler --replay " + quote(path.string()));
    std::filesystem::remove(path);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.j()["winner"], "spoiler");
    EXPECT_TRUE(r.j()["human_won"].get<bool>());
}

TEST_F(Cli, ErrorsAreJsonWithExitCodes)
{
    Result r = run("check " + quote("{\"n\":2") + " " + quote("(exists x (= x x))"));
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_EQ(r.j()["error"], "input");
    r = run("measure " + quote("(adj x y"));
    EXPECT_EQ(r.exit_code, 2);
    r = run("no-such-command");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_EQ(r.j()["code"], "usage");
    r = run("measure " + quote("(exists x (= x x))"), "FO_DEFLAB_THREADS=zero");
    EXPECT_EQ(r.exit_code, 2);
    r = run("measure " + quote("(exists x (= x x))"), "FO_DEFLAB_THREADS=2");
    EXPECT_EQ(r.exit_code, 0);
}
