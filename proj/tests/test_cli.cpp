#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "amoebot_cli_test";
  fs::create_directories(p);
  return p;
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

int cli(const std::string& args) {
  std::string cmd = std::string(AMOEBOT_CLI) + " " + args + " > " + (scratch() / "out.txt").string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Cli, StripeLine3) {
  auto f = write("line3.txt", "0 0\n1 0\n2 0\n");
  EXPECT_EQ(cli("run stripe --input " + f.string() + " --dir ENE --ref 0,0 --check"), 0);
  EXPECT_NE(slurp(scratch() / "out.txt").find("\"oracle_agree\": true"), std::string::npos);
}

TEST(Cli, MaximaRing) {
  auto f = write("ring.txt", "# ring\n0 1\n1 0\n1 -1\n0 -1\n-1 0\n-1 1\n");
  EXPECT_EQ(cli("run maxima --input " + f.string() + " --dir N --check"), 0);
}

TEST(Cli, SymmetryTriangle) {
  auto f = write("tri.txt", "0 0\n1 0\n0 1\n");
  EXPECT_EQ(cli("run symmetry --input " + f.string() + " -c 2 --check"), 0);
  EXPECT_NE(slurp(scratch() / "out.txt").find("\"rot3\": true"), std::string::npos);
}

TEST(Cli, ErrorsExitTwo) {
  auto dup = write("dup.txt", "0 0\n0 0\n");
  EXPECT_EQ(cli("run stripe --input " + dup.string()), 2);
  EXPECT_NE(slurp(scratch() / "out.txt").find("DuplicateNode"), std::string::npos);
  auto gap = write("gap.txt", "0 0\n5 5\n");
  EXPECT_EQ(cli("run stripe --input " + gap.string()), 2);
  auto bad = write("bad.txt", "0 zero\n");
  EXPECT_EQ(cli("run stripe --input " + bad.string()), 2);
  EXPECT_EQ(cli("run stripe --input /nonexistent/file"), 2);
  EXPECT_EQ(cli("run nosuch --input " + dup.string()), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  auto ring = write("ring2.txt", "0 1\n1 0\n1 -1\n0 -1\n-1 0\n-1 1\n");
  EXPECT_EQ(cli("run skeleton --pins 2 --input " + ring.string()), 2);
  EXPECT_EQ(cli("run symmetry --max-rounds 5 --input " + ring.string()), 2);
}

TEST(Cli, TraceAndSvgFilesAreReproducible) {
  auto f = write("ring3.txt", "0 1\n1 0\n1 -1\n0 -1\n-1 0\n-1 1\n");
  auto t1 = scratch() / "a.trace", t2 = scratch() / "b.trace";
  auto s1 = scratch() / "a.svg", s2 = scratch() / "b.svg";
  ASSERT_EQ(cli("run skeleton --input " + f.string() + " --seed 4 --trace " + t1.string() + " --svg " + s1.string()), 0);
  ASSERT_EQ(cli("run skeleton --input " + f.string() + " --seed 4 --trace " + t2.string() + " --svg " + s2.string()), 0);
  EXPECT_EQ(slurp(t1), slurp(t2));
  EXPECT_EQ(slurp(s1), slurp(s2));
  EXPECT_EQ(slurp(s1).rfind("<?xml", 0), 0u);
}

TEST(Cli, Sweep) {
  EXPECT_EQ(cli("sweep --sizes 16..64 --shape ring --trials 2"), 0);
  auto out = slurp(scratch() / "out.txt");
  EXPECT_NE(out.find("n,mean_rounds"), std::string::npos);
  EXPECT_NE(out.find("# fit"), std::string::npos);
  EXPECT_EQ(cli("sweep --shape cube"), 2);
}
