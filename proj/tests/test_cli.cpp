#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qpb/cli.hpp"

using qpb::cli::Format;
using qpb::cli::Result;

namespace {

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  return qpb::cli::run(args, in);
}

std::string first_token(const std::string& s) { return s.substr(0, s.find(' ')); }

const std::string kQueer = "field(queer=1)";
const std::string kDx = "field(dx=1)";

}  // namespace

TEST_CASE("documented examples") {
  const Result d = run({"delta", "q(op(1;;))"});
  CHECK(d.exit_code == 0);
  CHECK(d.out == "2\n");

  const Result b =
      run({"bracket", "--d1", kQueer, "--d2", kDx, "0-x", "q(op(1;;))", "--at", "point([],0)"});
  CHECK(b.exit_code == 0);
  CHECK(b.out == "2\n");

  const Result t = run({"tensor", "--d1", kQueer, "--d2", kDx, "--at", "point([],0)"});
  CHECK(t.exit_code == 1);
  CHECK(first_token(t.err) == "QueerAtPoint");
  CHECK(t.out.empty());
}

TEST_CASE("verbs") {
  CHECK(run({"eval", "ip(v,[1:1/2,3:-2]) * x", "--at", "point([1:2,3:1],3)"}).out == "-3\n");
  CHECK(run({"grad", "x*q(op(1;;))", "--at", "point([1:1],3)"}).out == "v: [1:6]\nx: 1\n");
  CHECK(run({"hess", "x*q(op(1;;))", "--at", "point([1:1],3)"}).out ==
        "vv: op(6;;)\nvx: [1:2]\nxx: 0\n");
  CHECK(run({"hamfield", "--d1", kQueer, "--d2", kDx, "q(op(1;;))"}).out == "field(dx=2)\n");
  CHECK(run({"hamfield", "--d1", kQueer, "--d2", kDx, "0-x"}).out == "field(queer=1)\n");
  CHECK(run({"order", "field(queer=x; dx=1)", "--at", "point([],1)"}).out == "Queer\n");
  CHECK(run({"order", "field(queer=x; dx=1)", "--at", "point([],0)"}).out == "Kinematic\n");
  CHECK(run({"tensor", "--d1", "field(queer=x; kin=[1:1])", "--d2", kDx, "--at", "point([],0)"}).out ==
        "1*([1:1] ^ dx)\n");
  CHECK(run({"sharp", "--d1", "field(kin=[1:1])", "--d2", kDx, "--at", "point([],0)", "--mu",
             "dual([1:2],3)"})
            .out == "v: [1:-3]\nx: 2\n");
  CHECK(run({"truncate", "q(op(1;;))", "--n", "3"}).out == "v1^2 + v2^2 + v3^2\n");
  CHECK(run({"demo", "no-extension"}).exit_code == 0);

  const Result w = run({"witness", "--d1", kQueer, "--d2", kDx, "--at", "point([1:1],0)"});
  CHECK(w.exit_code == 0);
  CHECK(w.out.find("1 - 2*ip(v,[1:1]) + q(op(1;;))") != std::string::npos);
}

TEST_CASE("exit codes and reason codes") {
  const Result syntax = run({"eval", "x +", "--at", "point([],0)"});
  CHECK(syntax.exit_code == 2);
  CHECK(first_token(syntax.err) == "SyntaxError");
  CHECK(syntax.err.find("3") != std::string::npos);

  const Result unknown = run({"frobnicate", "x"});
  CHECK(unknown.exit_code == 2);
  CHECK(first_token(unknown.err) == "UsageError");

  const Result no_witness =
      run({"witness", "--d1", "field(kin=[1:1])", "--d2", "field(kin=[2:1])", "--at", "point([],0)"});
  CHECK(no_witness.exit_code == 1);
  CHECK(first_token(no_witness.err) == "WitnessNotFound");

  const Result noncommuting =
      run({"bracket", "--d1", "field(queer=x)", "--d2", kDx, "x", "x", "--at", "point([],0)"});
  CHECK(noncommuting.exit_code == 1);
  CHECK(first_token(noncommuting.err) == "NonCommutingFields");

  const Result domain = run({"eval", "ip(v,geo(2))", "--at", "point([],0)"});
  CHECK(domain.exit_code == 1);
  CHECK(first_token(domain.err) == "DomainError");

  const Result bad_format = run({"delta", "x", "--format", "xml"});
  CHECK(bad_format.exit_code == 2);
  CHECK(first_token(bad_format.err) == "UsageError");

  const Result tight = run({"fdcheck", "x*x*x", "--at", "point([],3)", "--n", "2", "--step", "0.5"});
  CHECK(tight.exit_code == 1);
  CHECK(first_token(tight.err) == "ToleranceExceeded");
}

TEST_CASE("csv reports") {
  const Result ax =
      run({"axioms", "--d1", kQueer, "--d2", kDx, "--trials", "4", "--format", "csv", "--seed", "9"});
  CHECK(ax.out == "axiom,trials,failures\nskew,4,0\njacobi,4,0\nleibniz,4,0\n");

  const Result ec = run({"ellconv", "op(2;pow(1,1);)", "--ns", "10,100,1000", "--format", "csv"});
  CHECK(ec.out == "n,ell_n,target,abs_err\n10,2.1,2,0.1\n100,2.01,2,0.01\n1000,2.001,2,0.001\n");

  const Result fd = run({"fdcheck", "q(op(1;;))", "--at", "point([],0)", "--n", "4", "--format", "csv"});
  CHECK(fd.out.rfind("block,max_rel_err\ngrad_v,", 0) == 0);

  const Result demo = run({"demo", "ill-posed", "--format", "csv"});
  CHECK(demo.out == "n,drho_dt_start,drho_dt_mean\n2,0,0\n4,0,0\n8,0,0\n");

  CHECK(qpb::cli::emit_report(std::vector<qpb::ConvergenceRow>{}, Format::Csv) ==
        "n,ell_n,target,abs_err\n");
  CHECK(qpb::cli::emit_report(qpb::AxiomReport{}, Format::Csv) == "axiom,trials,failures\n");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> cmd = {"axioms", "--d1", "field(kin=[1:1])", "--d2",
                                        "field(kin=[2:1])", "--trials", "10", "--seed", "3"};
  const Result a = run(cmd), b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const std::vector<std::string> fd = {"fdcheck", "x*q(op(1;;))", "--at", "point([1:1],1)",
                                       "--n", "4", "--precision", "6"};
  CHECK(run(fd).out == run(fd).out);
}

TEST_CASE("precision") {
  CHECK(qpb::cli::format_double(0.1, 12) == "0.1");
  CHECK(qpb::cli::format_double(1.0 / 3.0, 4) == "0.3333");
}

TEST_CASE("input from stdin and files") {
  CHECK(run({"delta", "-"}, "q(op(3;;))").out == "6\n");
  CHECK(run({"delta", "--file", "-"}, "2*q(op(1;;))").out == "4\n");

  const std::string path = "qpb_cli_test_input.txt";
  {
    std::ofstream f(path);
    f << "x*q(op(1;;))\n";
  }
  CHECK(run({"delta", "--file", path}).out == "2*x\n");
  std::remove(path.c_str());

  const Result missing = run({"delta", "--file", "/nonexistent/qpb"});
  CHECK(missing.exit_code != 0);
}
