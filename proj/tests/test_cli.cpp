#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nilsmooth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path log = dir_ / "out.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" NILSMOOTH_CLI "' " + args + " > out.txt 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(log);
    return r;
  }

  std::string slurp(const fs::path& p) const {
    std::ifstream in(p.is_absolute() ? p : dir_ / p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, BuildAnalyzeSmoothVerify) {
  ASSERT_EQ(run("build z1 --window 3 -o z1.json").code, 0);
  const Outcome a = run("analyze z1.json");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("1 I-class, 0 M-classes"), std::string::npos) << a.out;
  EXPECT_TRUE(fs::exists(dir_ / "z1.decomposition.json"));
  const Outcome s = run("smooth z1.json --alpha 0.5 --pairs 200 -o out");
  EXPECT_EQ(s.code, 0) << s.out;
  for (const char* f : {"out.smoothed.action.json", "out.conjugacy.json", "out.holder.json"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  const Outcome v = run("verify z1.json --alpha 0.5 --samples 200");
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out.find("FAIL"), std::string::npos) << v.out;
}

TEST_F(Cli, MixedExampleHasOneClassOfEachKind) {
  ASSERT_EQ(run("build mixed -o m.json").code, 0);
  const Outcome a = run("analyze m.json");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("1 I-class, 1 M-class"), std::string::npos) << a.out;
}

TEST_F(Cli, AlphaAtOrAboveInverseDegreeIsRejected) {
  ASSERT_EQ(run("build heisenberg-ff --window 2 -o h.json").code, 0);
  const Outcome r = run("smooth h.json --alpha 0.25 -o out");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("alpha * d < 1"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(dir_ / "out.smoothed.action.json"));
  EXPECT_EQ(run("build heisenberg-ff --alpha 0.3 -o h2.json").code, 2);
}

TEST_F(Cli, CsvHasTheDocumentedColumns) {
  ASSERT_EQ(run("build mixed --window 2 -o m.json").code, 0);
  ASSERT_EQ(run("smooth m.json --alpha 0.2 --pairs 100 --emit-csv rows.csv -o out").code, 0);
  std::istringstream csv(slurp("rows.csv"));
  std::string header, line;
  std::getline(csv, header);
  EXPECT_EQ(header, "label,i,word_length,b,b_prime,t,sampled_norm,margin");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ASSERT_EQ(line.front(), '"') << line;
    const std::string rest = line.substr(line.find('"', 1) + 1);
    EXPECT_EQ(std::count(rest.begin(), rest.end(), ','), 7) << line;
    ++rows;
  }
  EXPECT_GT(rows, 10u);
}

TEST_F(Cli, OutputIsByteIdenticalAcrossRunsAndJobs) {
  ASSERT_EQ(run("build mixed --window 2 -o m.json").code, 0);
  ASSERT_EQ(run("smooth m.json --alpha 0.2 --pairs 100 --seed 7 --emit-csv a.csv -o a").code, 0);
  ASSERT_EQ(run("smooth m.json --alpha 0.2 --pairs 100 --seed 7 --emit-csv b.csv -o b --jobs 3").code, 0);
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_EQ(slurp("a.smoothed.action.json"), slurp("b.smoothed.action.json"));
  EXPECT_EQ(slurp("a.conjugacy.json"), slurp("b.conjugacy.json"));
  EXPECT_EQ(slurp("a.holder.json"), slurp("b.holder.json"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("build nonsense").code, 2);
  EXPECT_EQ(run("analyze missing.json").code, 2);
  {
    std::ofstream(dir_ / "broken.json") << "{\"schema\": \"action-v1\"";
  }
  EXPECT_EQ(run("analyze broken.json").code, 2);
  // A circle action cannot be split into classes on the line.
  ASSERT_EQ(run("build denjoy --orbit 9 -o d.json").code, 0);
  EXPECT_EQ(run("analyze d.json").code, 1);
  ASSERT_EQ(run("build heisenberg-ff --window 2 -o h.json").code, 0);
  const Outcome r = run("report h.json --radius 30 --budget 1000");
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST_F(Cli, CircleActionIsUnrolledBeforeSmoothing) {
  ASSERT_EQ(run("build denjoy --orbit 9 -o d.json").code, 0);
  const Outcome b = run("build denjoy --orbit 200");
  EXPECT_NE(b.out.find("rotation_number 0.618"), std::string::npos) << b.out;
  const Outcome s = run("smooth d.json --alpha 0.4 --pairs 100 -o out");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("unroll"), std::string::npos) << s.out;
}
