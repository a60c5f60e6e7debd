#include <gtest/gtest.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

#include "ellsum_cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ellsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  ellsum::cli::reset_stop();
  const int code = ellsum::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string family(const std::string& name) { return std::string(ELLSUM_DATA_DIR) + "/families/" + name + ".txt"; }

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ellsum_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, TraceMatchesTau) {
  const auto r = run({"trace", "--level", "1", "--weight", "12", "--prime-max", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p,trace\n2,-24\n3,252\n5,4830\n7,-16744\n");
}

TEST(Cli, MassCheckPasses) {
  const auto r = run({"mass-check", "--prime-max", "31"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n5,8,ok\n"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 3), "OK\n");
}

TEST(Cli, MomentCheckPasses) {
  const auto r = run({"moment-check", "--prime-max", "17", "--n-max", "4", "--levels", "1,3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(r.out.size() - 3), "OK\n");
}

TEST(Cli, IsogenyCount) {
  const auto r = run({"isogeny-count", "--prime", "13", "--a", "4", "--f", "3", "--level", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p,a,f,M,mine,oracle,ito,ogg\n13,4,3,3,4,4,4,\nOK\n");
  EXPECT_EQ(run({"isogeny-count", "--prime", "13", "--a", "4", "--f", "2", "--level", "3"}).code, 2);
}

TEST(Cli, ClassnumJsonCarriesExactStrings) {
  const auto r = run({"classnum", "--disc", "-4", "--out", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["h_w"], "1/2");
  EXPECT_EQ(j["rows"][0]["h_w_sixths"], 3);
}

TEST(Cli, ApCommand) {
  const auto r = run({"ap", "--family", family("legendre"), "--prime", "5", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["A2"], 14);
  EXPECT_EQ(j["rows"].size(), 5u);
}

TEST(Cli, GeometryCommand) {
  const auto r = run({"geometry", "--family", family("legendre"), "--mw-rank", "0", "--b", "0,13", "--ranks", "2,3",
                      "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["multiset"], nlohmann::json::array({2, 2}));
  EXPECT_EQ(j["summary"]["sum_m_squared"], 8);
  EXPECT_EQ(j["summary"]["shioda_tate_rank"], 4);
  EXPECT_EQ(j["summary"]["thm_e2_rhs"], "13");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"residue", "--family", family("legendre"), "--n", "2", "--xmax", "3"}).code, 2);
  EXPECT_EQ(run({"residue", "--family", family("legendre"), "--n", "2", "--xmax", "100", "--preset", "x"}).code, 2);
  EXPECT_EQ(run({"residue", "--family", family("legendre"), "--n", "2", "--xmax", "100", "--preset", "thm-e2",
                 "--lambda", "2"}).code,
            2);
  EXPECT_EQ(run({"weighted-residue", "--n", "3", "--xmax", "100"}).code, 2);
  EXPECT_EQ(run({"trace", "--level", "2", "--weight", "2", "--prime-max", "10"}).code, 2);
  EXPECT_EQ(run({"ap", "--family", family("quadratic"), "--prime", "23"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BadFamilyFileNamesLine) {
  const auto path = temp_path("bad.txt");
  std::ofstream(path) << "label = bad\nA = [x]\n";
  const auto r = run({"rank", "--family", path.string(), "--xmax", "100"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, ByteIdenticalAcrossWorkerCounts) {
  const std::vector<std::vector<std::string>> jobs{
      {"residue", "--family", family("legendre"), "--n", "2", "--preset", "thm-modular", "--xmax", "600"},
      {"residue", "--family", family("sextic"), "--n", "4", "--preset", "thm-e2", "--xmax", "400", "--out", "json"},
      {"rank", "--family", family("section"), "--xmax", "500"},
      {"weighted-residue", "--level", "5", "--n", "4", "--xmax", "800"},
      {"moment-check", "--prime-max", "23", "--levels", "1,5"},
      {"mass-check", "--prime-max", "41"},
  };
  for (const auto& job : jobs) {
    std::string reference;
    for (const char* w : {"1", "4", "16"}) {
      auto args = job;
      args.push_back("--workers");
      args.push_back(w);
      const auto r = run(args);
      ASSERT_EQ(r.code, 0) << r.err;
      if (reference.empty()) reference = r.out;
      EXPECT_EQ(r.out, reference) << job[0] << " workers=" << w;
    }
  }
}

TEST(Cli, WorkersFromEnvironment) {
  ::setenv("ELLSUM_WORKERS", "3", 1);
  EXPECT_EQ(ellsum::cli::default_workers(), 3u);
  ::setenv("ELLSUM_WORKERS", "zero", 1);
  EXPECT_THROW(ellsum::cli::default_workers(), ellsum::cli::UsageError);
  ::unsetenv("ELLSUM_WORKERS");
}

TEST(Cli, HaltAndResumeIsByteIdentical) {
  const std::vector<std::string> base{"residue", "--family", family("quadratic"), "--n", "2", "--xmax", "1500", "--out", "json"};
  const auto whole = run(base);
  ASSERT_EQ(whole.code, 0);
  for (const char* halt : {"0", "1", "3"}) {
    const auto ck = temp_path(std::string("halt") + halt + ".ck");
    fs::remove(ck);
    auto args = base;
    args.insert(args.end(), {"--checkpoint", ck.string(), "--halt-after", halt});
    const auto stopped = run(args);
    EXPECT_EQ(stopped.code, 3);
    EXPECT_TRUE(stopped.out.empty());
    ASSERT_TRUE(fs::exists(ck));
    EXPECT_NE(slurp(ck).find("p_last="), std::string::npos);
    auto resume = base;
    resume.insert(resume.end(), {"--checkpoint", ck.string(), "--workers", "4"});
    const auto finished = run(resume);
    EXPECT_EQ(finished.code, 0) << finished.err;
    EXPECT_EQ(finished.out, whole.out);
  }
}

TEST(Cli, ResumeRefusesOtherConfiguration) {
  const auto ck = temp_path("mismatch.ck");
  fs::remove(ck);
  ASSERT_EQ(run({"rank", "--family", family("legendre"), "--xmax", "300", "--checkpoint", ck.string()}).code, 0);
  const auto r = run({"rank", "--family", family("section"), "--xmax", "300", "--checkpoint", ck.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("refusing to resume"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const auto path = temp_path("trace.csv");
  const auto r = run({"trace", "--weight", "12", "--prime-max", "3", "--output", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), "p,trace\n2,-24\n3,252\n");
}

// Real process, real SIGINT.
TEST(Cli, InterruptLeavesResumableCheckpoint) {
  const auto ck = temp_path("sigint.ck");
  const auto out1 = temp_path("sigint_partial.csv");
  fs::remove(ck);
  const std::vector<std::string> base{ELLSUM_BINARY, "residue", "--family", family("legendre"), "--n", "2",
                                      "--xmax", "6000", "--workers", "1"};
  auto spawn = [](std::vector<std::string> args) {
    const pid_t pid = ::fork();
    if (pid == 0) {
      std::vector<char*> argv;
      for (auto& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      ::execv(argv[0], argv.data());
      ::_exit(127);
    }
    return pid;
  };
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  const pid_t pid = spawn(with({"--checkpoint", ck.string(), "--output", out1.string()}));
  ASSERT_GT(pid, 0);
  std::this_thread::sleep_for(std::chrono::milliseconds(700));
  ::kill(pid, SIGINT);
  int status = 0;
  ::waitpid(pid, &status, 0);
  ASSERT_TRUE(WIFEXITED(status));
  if (WEXITSTATUS(status) == 0) GTEST_SKIP() << "run finished before the signal arrived";
  EXPECT_EQ(WEXITSTATUS(status), 3);
  ASSERT_TRUE(fs::exists(ck));

  const auto resumed = temp_path("sigint_resumed.csv");
  const auto reference = temp_path("sigint_reference.csv");
  for (const auto& [args, path] : {std::pair{with({"--checkpoint", ck.string(), "--output", resumed.string()}), resumed},
                                   std::pair{with({"--output", reference.string()}), reference}}) {
    const pid_t p = spawn(args);
    ::waitpid(p, &status, 0);
    ASSERT_TRUE(WIFEXITED(status));
    ASSERT_EQ(WEXITSTATUS(status), 0) << path;
  }
  EXPECT_EQ(slurp(resumed), slurp(reference));
}
