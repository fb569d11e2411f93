#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "superq/io.hpp"
#include "superq/supermatrix.hpp"

using namespace superq;

namespace {

std::string env_or_fail(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, name, " must be set (run through ctest)");
  return v;
}

std::string golden(const std::string& file) { return env_or_fail("SUPERQ_GOLDEN") + "/" + file; }

std::string work(const std::string& file) { return env_or_fail("SUPERQ_WORK") + "/" + file; }

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args, int idx = 0) {
  static int counter = 0;
  const std::string capture = work("cli_capture_" + std::to_string(idx) + "_" +
                                   std::to_string(counter++) + ".txt");
  const std::string cmd =
      env_or_fail("SUPERQ_CLI") + " " + args + " > " + capture + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, read_text_file(capture)};
}

}  // namespace

TEST_CASE("parse-serialize round trip is byte identical on canonical files") {
  for (const char* file :
       {"element.json", "matrix_1_1.json", "matrix_singular_d.json", "matrix_osp_identity.json",
        "bell.json", "table_unnormalized.json", "table_super_even.json", "state_even_a.json",
        "state_even_b.json", "state_odd.json", "qutrit_e0.json", "qutrit_e1.json"}) {
    const std::string path = golden(file);
    const std::string original = read_text_file(path);
    const json j = parse_json_file(path);
    std::string reserialized;
    if (j.contains("terms"))
      reserialized = dump_canonical(element_to_json(element_from_json(j)));
    else if (j.contains("entries"))
      reserialized = dump_canonical(matrix_to_json(matrix_from_json(j)));
    else if (j.contains("slots"))
      reserialized = dump_canonical(table_to_json(table_from_json(j)));
    else
      reserialized = dump_canonical(state_to_json(state_from_json(j)));
    INFO(file);
    CHECK(reserialized == original);
  }
}

TEST_CASE("parser accepts any key order") {
  const GrassmannElement z = element_from_json(json::parse(
      R"({"n": 4, "terms": [{"gens": [1,3], "re": 0.5, "im": -1.0}, {"gens": [], "re": 2.0, "im": 0.0}]})"));
  CHECK(z.generators() == 4);
  CHECK(std::abs(z.coeff({1, 3}) - cplx{0.5, -1.0}) == 0.0);
  CHECK(std::abs(z.body() - cplx{2.0, 0.0}) == 0.0);
}

TEST_CASE("parser rejects malformed structures") {
  CHECK_THROWS_AS(parse_json_file(golden("bad.json")), parse_error);
  CHECK_THROWS_AS(element_from_json(json{{"n", 4}}), parse_error);
  CHECK_THROWS_AS(
      element_from_json(json::parse(R"({"n":2,"terms":[{"gens":[2,1],"re":1.0,"im":0.0}]})")),
      parse_error);
  CHECK_THROWS_AS(
      element_from_json(json::parse(R"({"n":1,"terms":[{"gens":[2],"re":1.0,"im":0.0}]})")),
      parse_error);
  // container/embedded algebra mismatch
  const json m = parse_json_file(golden("matrix_1_1.json"));
  json tweaked = m;
  tweaked["n"] = 6;
  CHECK_THROWS_AS(matrix_from_json(tweaked), parse_error);
}

TEST_CASE("cli: berezinian of the (1|1) golden matrix matches the closed form") {
  const std::string out = work("ber_value.json");
  const CliResult r = run_cli("ber " + golden("matrix_1_1.json") + " -o " + out);
  CHECK(r.code == 0);

  const SuperMatrix m = matrix_from_json(parse_json_file(golden("matrix_1_1.json")));
  const GrassmannElement a = m.at(0, 0), beta = m.at(0, 1), gamma = m.at(1, 0), d = m.at(1, 1);
  const GrassmannElement want = a * inverse(d) - beta * gamma * inverse(d) * inverse(d);
  const json rep = parse_json_file(out);
  const GrassmannElement got = element_from_json(rep.at("value"));
  CHECK(max_coeff_diff(got, want) <= 1e-12);
}

TEST_CASE("cli: exit code contract") {
  CHECK(run_cli("ber " + golden("matrix_singular_d.json")).code == 2);
  CHECK(run_cli("ber " + golden("bad.json")).code == 1);
  CHECK(run_cli("ber " + golden("matrix_1_1.json") + "missing").code == 1);
  CHECK(run_cli("frobnicate " + golden("bell.json")).code == 1);
  CHECK(run_cli("concurrence " + golden("table_unnormalized.json")).code == 2);
  CHECK(run_cli("concurrence " + golden("table_unnormalized.json") + " --force-unnormalized")
            .code == 0);
  // parity mismatch between table kind and measure is a domain error
  CHECK(run_cli("superconcurrence " + golden("bell.json")).code == 2);
}

TEST_CASE("cli: concurrence of the Bell table is 1") {
  const std::string out = work("concurrence_bell.json");
  const CliResult r = run_cli("concurrence " + golden("bell.json") + " -o " + out);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"measure\":\"concurrence\"") != std::string::npos);
  const json rep = parse_json_file(out);
  CHECK(std::abs(rep.at("value").get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("cli: four supertranspositions reproduce the input bytes") {
  std::string current = golden("matrix_1_1.json");
  for (int k = 0; k < 4; ++k) {
    const std::string next = work("st_" + std::to_string(k) + ".json");
    CHECK(run_cli("stranspose " + current + " -o " + next).code == 0);
    current = next;
  }
  CHECK(read_text_file(current) == read_text_file(golden("matrix_1_1.json")));
  // two applications are not the identity (off-diagonal blocks flip sign)
  CHECK(read_text_file(work("st_1.json")) != read_text_file(golden("matrix_1_1.json")));
}

TEST_CASE("cli: inner, outer, tensor, cross") {
  CHECK(run_cli("inner " + golden("state_even_a.json") + " " + golden("state_even_b.json")).code ==
        0);

  // opposite parities: exact zero element
  const std::string out = work("inner_zero.json");
  CHECK(run_cli("inner " + golden("state_even_a.json") + " " + golden("state_odd.json") + " -o " +
                out)
            .code == 0);
  CHECK(element_from_json(parse_json_file(out).at("value")).is_zero());

  const std::string rho = work("outer.json");
  CHECK(run_cli("outer " + golden("state_even_b.json") + " -o " + rho).code == 0);
  const SuperMatrix m = matrix_from_json(parse_json_file(rho));
  CHECK(m.parity() == Parity::even);
  CHECK(validate(m).empty());

  const std::string table = work("tensor.json");
  CHECK(run_cli("tensor " + golden("state_even_a.json") + " " + golden("state_odd.json") + " -o " +
                table)
            .code == 0);
  CHECK(parse_json_file(table).at("kind").get<std::string>() == "super-odd");

  const CliResult cross =
      run_cli("cross " + golden("qutrit_e0.json") + " " + golden("qutrit_e1.json"));
  CHECK(cross.code == 0);
  CHECK(cross.out.find("\"norm_sq\":1.0") != std::string::npos);
}

TEST_CASE("cli: group check and sdtr") {
  const CliResult gc =
      run_cli("group-check " + golden("matrix_osp_identity.json") + " --group OSP21");
  CHECK(gc.code == 0);
  CHECK(gc.out.find("\"member\":true") != std::string::npos);

  CHECK(run_cli("group-check " + golden("matrix_osp_identity.json") + " --group SL2").code == 2);

  CHECK(run_cli("sdtr " + golden("matrix_osp_identity.json")).code == 0);
  CHECK(run_cli("tangle " + golden("table_super_even.json")).code == 0);
  const CliResult sep = run_cli("separable " + golden("bell.json"));
  CHECK(sep.code == 0);
  CHECK(sep.out.find("\"separable\":false") != std::string::npos);
}

TEST_CASE("cli: verify is deterministic and passes") {
  const CliResult a = run_cli("verify --seed 42 --iters 25");
  const CliResult b = run_cli("verify --seed 42 --iters 25");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);

  const CliResult c = run_cli("verify --seed 7 --iters 25");
  CHECK(c.code == 0);
  CHECK(c.out != a.out);
}

TEST_CASE("cli: calibration pins deterministically") {
  const std::string cfg1 = work("cal1.conf");
  const CliResult a = run_cli("calibrate-sdtr --seed 42 --iters 50 --tol 1e-9 -o " + cfg1);
  const std::string first = read_text_file(cfg1);
  const CliResult b = run_cli("calibrate-sdtr --seed 42 --iters 50 --tol 1e-9 -o " + cfg1);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(read_text_file(cfg1) == first);
  CHECK(first.find("neg_half_str_EMsT_EM") != std::string::npos);

  // the pinned config drives the sdtr verb
  const CliResult s =
      run_cli("sdtr " + golden("matrix_osp_identity.json") + " --config " + cfg1);
  CHECK(s.code == 0);
  CHECK(s.out.find("\"calibration\":\"neg_half_str_EMsT_EM\"") != std::string::npos);

  // unknown arrangement id in the config is a domain error
  write_text_file(work("cal_bad.conf"), "sdtr_arrangement = nonsense\n");
  CHECK(run_cli("sdtr " + golden("matrix_osp_identity.json") + " --config " + work("cal_bad.conf"))
            .code == 2);
}
