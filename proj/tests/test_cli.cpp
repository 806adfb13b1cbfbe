// Exit-code and report contract of the command-line tool, exercised by
// spawning the real binary against fixture files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "liplift/io.hpp"

using namespace liplift;

namespace {

struct CliRun {
  int exit_code;
  std::string output;  // stdout + stderr
};

struct Fixture {
  std::filesystem::path dir;

  Fixture() {
    dir = std::filesystem::temp_directory_path() /
          ("liplift_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    write("eq3.space",
          "points 3\nbase 0\nlabels 0 a b\n0 1 1\n1 0 1\n1 1 0\n");
    write("tri.space",
          "points 3\nbase 0\nlabels 0 a b\n0 1 3\n1 0 1\n3 1 0\n");
    write("bad.space", "pts 2\n");
    write("ident3.op", "operator eq3.space eq3.space\n1 0\n0 1\n");
    write("zero3.op", "operator eq3.space eq3.space\n0 0\n0 0\n");
    write("double3.op", "operator eq3.space eq3.space\n2 0\n0 2\n");
    write("swap.map", "compose eq3.space eq3.space\nscale -2\n0 0\na b\nb a\n");
    write("f.fn", "function eq3.space\na 1\nb -1\n");
    write("m.fv", "freevector eq3.space\na 1\nb 1\n");
  }

  ~Fixture() { std::filesystem::remove_all(dir); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(dir / name);
    out << content;
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  CliRun run(const std::string& args) const {
    std::string out_file = (dir / "_out.txt").string();
    std::string cmd = "cd " + dir.string() + " && " + LIPLIFT_CLI_PATH + " " + args + " > " +
                      out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return CliRun{code, ss.str()};
  }
};

bool has_line(const std::string& output, const std::string& line) {
  std::istringstream in(output);
  std::string cur;
  while (std::getline(in, cur)) {
    if (cur == line) return true;
  }
  return false;
}

std::string strip_duration(const std::string& s) {
  std::istringstream in(s);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("duration_ms", 0) == 0) continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("validate: exit 0 / 2 / 3 contract") {
  Fixture fx;
  auto ok = fx.run("validate eq3.space");
  CHECK(ok.exit_code == 0);
  CHECK(has_line(ok.output, "valid = true"));

  auto tri = fx.run("validate tri.space");
  CHECK(tri.exit_code == 2);
  CHECK(tri.output.find("TriangleViolation") != std::string::npos);
  CHECK(tri.output.find("d(0,2)") != std::string::npos);  // witness triple

  auto bad = fx.run("validate bad.space");
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("bad.space:1:1") != std::string::npos);

  auto missing = fx.run("validate nope.space");
  CHECK(missing.exit_code == 3);
}

TEST_CASE("lipnorm and freenorm report the computed scalars") {
  Fixture fx;
  auto lip = fx.run("lipnorm f.fn");
  CHECK(lip.exit_code == 0);
  CHECK(has_line(lip.output, "lip_norm = 2"));

  auto fn = fx.run("freenorm m.fv --mode rational");
  CHECK(fn.exit_code == 0);
  CHECK(has_line(fn.output, "free_norm = 2"));
  CHECK(has_line(fn.output, "duality_gap = 0"));
}

TEST_CASE("deleeuw emits the matrix under the flag") {
  Fixture fx;
  auto plain = fx.run("deleeuw eq3.space");
  CHECK(plain.exit_code == 0);
  CHECK(has_line(plain.output, "rows = 6"));
  CHECK(plain.output.find("begin block") == std::string::npos);

  auto with = fx.run("deleeuw eq3.space --emit-matrices");
  CHECK(with.output.find("begin block") != std::string::npos);
  CHECK(with.output.find("row (a,b) = 1 -1") != std::string::npos);
}

TEST_CASE("lift: identity fixture reports unit norms and zero residual") {
  Fixture fx;
  auto r = fx.run("lift ident3.op");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.output, "operator_norm = 1"));
  CHECK(has_line(r.output, "lifting_norm = 1"));
  CHECK(has_line(r.output, "commutation_residual = 0"));

  auto z = fx.run("lift zero3.op");
  CHECK(z.exit_code == 0);
  CHECK(has_line(z.output, "operator_norm = 0"));
  CHECK(has_line(z.output, "lifting_norm = 0"));

  auto d = fx.run("lift double3.op --mode rational");
  CHECK(d.exit_code == 0);
  CHECK(has_line(d.output, "operator_norm = 2"));
  CHECK(has_line(d.output, "lifting_norm = 2"));
}

TEST_CASE("opnorm names the attaining pair") {
  Fixture fx;
  auto r = fx.run("opnorm double3.op --mode rational");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.output, "operator_norm = 2"));
  CHECK(r.output.find("attaining_pair = (") != std::string::npos);
}

TEST_CASE("lift --out feeds verify") {
  Fixture fx;
  auto lift = fx.run("lift ident3.op --out ident3.lift --mode rational");
  CHECK(lift.exit_code == 0);
  auto verify = fx.run("verify ident3.op ident3.lift --mode rational");
  CHECK(verify.exit_code == 0);
  CHECK(has_line(verify.output, "lifting_ok = true"));

  // corrupt one entry: commutation must fail with exit 5
  std::string text = read_file(fx.path("ident3.lift"));
  auto pos = text.find("row (0,a) 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "row (0,a) 2");
  fx.write("broken.lift", text);
  auto broken = fx.run("verify ident3.op broken.lift --mode rational");
  CHECK(broken.exit_code == 5);
  CHECK(has_line(broken.output, "lifting_ok = false"));
}

TEST_CASE("lift-compose checks the composition lifting") {
  Fixture fx;
  auto r = fx.run("lift-compose swap.map --mode rational");
  CHECK(r.exit_code == 0);
  CHECK(has_line(r.output, "operator_norm = 2"));
  CHECK(has_line(r.output, "lifting_norm = 2"));
  CHECK(has_line(r.output, "formula_norm = 2"));
  CHECK(has_line(r.output, "commutation_residual = 0"));
}

TEST_CASE("gen-ultrametric output validates and re-parses") {
  Fixture fx;
  auto gen = fx.run("gen-ultrametric 3 --out cube3.space");
  CHECK(gen.exit_code == 0);
  CHECK(has_line(gen.output, "points = 8"));
  CHECK(has_line(gen.output, "ultrametric = true"));
  auto val = fx.run("validate cube3.space");
  CHECK(val.exit_code == 0);

  auto no_out = fx.run("gen-ultrametric 3");
  CHECK(no_out.exit_code == 3);
}

TEST_CASE("gen-ultrametric respects the point cap env var") {
  Fixture fx;
  auto r = fx.run("gen-ultrametric 9 --out big.space");
  CHECK(r.exit_code == 0);
  ::setenv("LIPLIFT_POINT_CAP", "16", 1);
  auto capped = fx.run("gen-ultrametric 9 --out big.space");
  ::unsetenv("LIPLIFT_POINT_CAP");
  CHECK(capped.exit_code == 2);
  CHECK(capped.output.find("CapExceeded") != std::string::npos);
}

TEST_CASE("suite passes and honors fault injection") {
  Fixture fx;
  auto ok = fx.run("suite --sizes 1,2,3,4 --trials 80 --seed 42");
  CHECK(ok.exit_code == 0);
  CHECK(has_line(ok.output, "suite_ok = true"));
  CHECK(ok.output.find("degenerate_paths = pass") != std::string::npos);

  auto bad = fx.run("suite --sizes 2,3 --trials 40 --inject-fault verify_commutation");
  CHECK(bad.exit_code == 5);
  CHECK(has_line(bad.output, "failed_property = verify_commutation"));
  CHECK(bad.output.find("witness = ") != std::string::npos);
}

TEST_CASE("rational-mode reports are bit-identical minus duration") {
  Fixture fx;
  auto a = fx.run("lift ident3.op --mode rational --emit-matrices");
  auto b = fx.run("lift ident3.op --mode rational --emit-matrices");
  CHECK(a.exit_code == 0);
  CHECK(strip_duration(a.output) == strip_duration(b.output));

  auto s1 = fx.run("suite --mode rational --sizes 2,3 --trials 40");
  auto s2 = fx.run("suite --mode rational --sizes 2,3 --trials 40");
  CHECK(s1.exit_code == 0);
  CHECK(strip_duration(s1.output) == strip_duration(s2.output));
}

TEST_CASE("usage errors exit with the parse code") {
  Fixture fx;
  CHECK(fx.run("frobnicate x").exit_code == 3);
  CHECK(fx.run("lift").exit_code == 3);
  CHECK(fx.run("lift ident3.op --mode trinary").exit_code == 3);
}
