// Exercises the installed command-line surface end to end: exit codes,
// machine-readable output, determinism, CSV export.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

static int failures = 0;
static std::string cli;
static fs::path workdir;

#define EXPECT(cond, what)                                                   \
  do {                                                                       \
    if (!(cond)) {                                                           \
      ++failures;                                                            \
      std::cerr << "FAIL: " << what << " (line " << __LINE__ << ")\n";       \
    }                                                                        \
  } while (0)

struct RunResult {
  int exitCode;
  std::string out;
  std::string err;
};

static RunResult run(const std::string& args) {
  fs::path outf = workdir / "out.txt";
  fs::path errf = workdir / "err.txt";
  std::string cmd = cli + " " + args + " > " + outf.string() + " 2> " + errf.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exitCode = (rc >= 256) ? rc / 256 : rc;  // WEXITSTATUS without <sys/wait.h>
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  r.out = slurp(outf);
  r.err = slurp(errf);
  return r;
}

static void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cli>\n";
    return 2;
  }
  cli = argv[1];
  workdir = fs::temp_directory_path() / "leonard_cli_test";
  fs::create_directories(workdir);

  fs::path good = workdir / "params_s1.txt";
  write_file(good, "q = 1.3\nr0 = 0.8\nb = 1.7\nbstar = 2.3\nbdiam = 0.6\ns = 1\n");
  fs::path half = workdir / "params_half.txt";
  write_file(half, "q = 1.3\nr0 = 0.8\nb = 1.7\nbstar = 2.3\nbdiam = 0.6\ns = 1/2\n");
  fs::path degen = workdir / "params_degen.txt";
  // b/c = q^-2 collides consecutive eigenvalues: condition (i)
  write_file(degen, "q = 1.3\nr0 = 0.8\nb = 0.96153846153846154\nbstar = 2.3\nbdiam = 0.6\ns = 1\n");
  fs::path corrupt = workdir / "params_bad.txt";
  write_file(corrupt, "q = what\n");

  // triple: pass, deterministic json, export
  RunResult a = run("triple --params " + good.string() + " --format json --export " +
                    (workdir / "mats").string());
  EXPECT(a.exitCode == 0, "triple exit code");
  RunResult a2 = run("triple --params " + good.string() + " --format json --export " +
                     (workdir / "mats").string());
  EXPECT(a.out == a2.out, "triple json byte-identical on rerun");
  EXPECT(fs::exists(workdir / "mats" / "A.csv"), "exported A.csv");
  EXPECT(fs::exists(workdir / "mats" / "P_A_Astar.csv"), "exported transition csv");
  {
    auto j = nlohmann::json::parse(a.out);
    EXPECT(j["pass"].get<bool>(), "triple report pass flag");
    EXPECT(j["suite"] == "triple", "triple suite name");
    EXPECT(!j["checks"].empty(), "triple checks populated");
  }

  // degenerate parameters: exit 2, names the condition
  RunResult d = run("triple --params " + degen.string());
  EXPECT(d.exitCode == 2, "degenerate params exit 2");
  EXPECT(d.err.find("condition (i)") != std::string::npos, "names condition (i)");

  // corrupted config: exit 1 with diagnostics
  RunResult c = run("verify --params " + corrupt.string());
  EXPECT(c.exitCode == 1, "corrupt params exit 1");
  EXPECT(c.err.find("line 1") != std::string::npos, "parse diagnostics carry the line");

  // bethe hom level 0: empty root set, pass
  RunResult b0 = run("bethe hom --level 0 --params " + good.string() + " --format json");
  EXPECT(b0.exitCode == 0, "hom level 0 exit");
  {
    auto j = nlohmann::json::parse(b0.out);
    EXPECT(j.is_array() && j.size() == 1, "one root set");
    EXPECT(j[0]["U"].empty(), "level 0 has no roots");
  }

  // bethe inhom --all: 2s+1 solutions labeled by level
  RunResult bi = run("bethe inhom --all --epsilon -1 --params " + half.string() + " --format json");
  EXPECT(bi.exitCode == 0, "inhom all exit");
  {
    auto j = nlohmann::json::parse(bi.out);
    EXPECT(j.size() == 2, "2s+1 = 2 admissible solutions");
    EXPECT(j[0]["level"] == 0 && j[1]["level"] == 1, "solutions labeled by eigenvalue level");
    EXPECT(j[0]["kind"] == "inhomogeneous", "kind field");
  }
  RunResult bcsv = run("bethe inhom --all --epsilon -1 --params " + half.string() + " --format csv");
  EXPECT(bcsv.out.rfind("kind,epsilon,level", 0) == 0, "csv header");

  // verify suites
  RunResult vs = run("verify --suite scalar --params " + good.string() + " --format json --export " +
                     (workdir / "sweep").string());
  EXPECT(vs.exitCode == 0, "verify scalar exit");
  EXPECT(fs::exists(workdir / "sweep" / "scalar_sweep.csv"), "scalar sweep export");
  {
    std::ifstream f(workdir / "sweep" / "scalar_sweep.csv");
    std::string header;
    std::getline(f, header);
    EXPECT(header == "epsilon,M,u_values,theorem_re,theorem_im,direct_re,direct_im,residual",
           "sweep csv columns");
  }
  RunResult vb = run("verify --suite bs --params " + half.string() + " --export " +
                     (workdir / "bsx").string());
  EXPECT(vb.exitCode == 0, "verify bs exit");
  EXPECT(fs::exists(workdir / "bsx" / "bs_system_epsm_M0.csv"), "bs system export");
  RunResult vr = run("verify --suite racah --params " + half.string() + " --format pretty");
  EXPECT(vr.exitCode == 0, "verify racah exit");
  EXPECT(vr.out.find("determinant-route") != std::string::npos, "racah routes reported");

  // table layout output
  RunResult t1 = run("bethe table1 --format csv");
  EXPECT(t1.exitCode == 0, "table1 exit");
  EXPECT(t1.out.rfind("N,U1_hom,U2_hom,U1_inhom,U2_inhom", 0) == 0, "table1 csv layout");

  // racah table output
  RunResult rc = run("racah --params " + good.string() + " --format csv");
  EXPECT(rc.exitCode == 0, "racah exit");
  EXPECT(rc.out.rfind("M,N,re,im", 0) == 0, "racah csv header");
  int lines = 0;
  for (char ch : rc.out)
    if (ch == '\n') ++lines;
  EXPECT(lines == 10, "racah csv rows (header + 9 entries)");

  // unknown flag is a usage error
  RunResult u = run("triple --params " + good.string() + " --nonsense 2");
  EXPECT(u.exitCode != 0, "unknown flag rejected");

  // exhausted multistart budget is a solver failure
  RunResult sf = run("bethe inhom --all --budget 0 --params " + half.string());
  EXPECT(sf.exitCode == 3, "zero budget exits 3");
  EXPECT(sf.err.find("solver failure") != std::string::npos, "solver failure message");

  // the environment tolerance override reaches the verify suites
  RunResult et = run("verify --suite scalar --params " + good.string());
  RunResult et2;
  {
    std::string saved = cli;
    cli = "LEONARD_TOL=1e-30 " + saved;
    et2 = run("verify --suite scalar --params " + good.string());
    cli = saved;
  }
  EXPECT(et.exitCode == 0 && et2.exitCode == 4, "LEONARD_TOL override changes the verdict");

  if (failures == 0) std::cout << "cli surface: all checks passed\n";
  return failures == 0 ? 0 : 1;
}
