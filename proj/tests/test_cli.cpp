#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergokit/cli.hpp"
#include "ergokit/ergotropy.hpp"

using namespace ergokit;
using namespace ergokit::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ergokit_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

ErrorCode parse_code(std::string_view spec) {
  try {
    parse_ham_spec(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("spec accepted: " << spec);
  return ErrorCode::IoError;
}

std::string parse_message(std::string_view spec) {
  try {
    parse_ham_spec(spec);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Outcome run(std::string name, std::string state, std::string ham = {}) {
  Command c;
  c.name = std::move(name);
  c.state_source = std::move(state);
  c.ham_spec = std::move(ham);
  c.seed = 11;
  return run_command(c);
}

json run_json(std::string name, std::string state, std::string ham = {}) {
  const auto r = run(std::move(name), std::move(state), std::move(ham));
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.output);
}

double value(const json& j) { return j.at("value").get<double>(); }

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kGhz = R"({"name":"ghz","theta":0.7853981633974483})";

}  // namespace

TEST_CASE("ham spec: equispaced and composite") {
  const auto h = parse_ham_spec("equispaced:d=3,E=0.5");
  CHECK(h.dim() == 3);
  CHECK(h.energies()[2] == doctest::Approx(1.0));
  REQUIRE(h.equispaced_params().has_value());
  CHECK(h.equispaced_params()->levels == 3);

  const auto c = parse_ham_spec("composite:equispaced:d=2,E=1xequispaced:d=3,E=2");
  CHECK(c.is_composite());
  CHECK(c.subsystem_dims() == std::vector<std::size_t>{2, 3});
  CHECK(c.energies().back() == doctest::Approx(5.0));
}

TEST_CASE("ham spec: matrix files") {
  const auto plain = write_file("diag.json", "[[0,0,0],[0,2,0],[0,0,5]]");
  const auto h = parse_ham_spec("matrix:" + plain.string());
  CHECK(h.energies()[0] == doctest::Approx(0.0));
  CHECK(h.energies()[1] == doctest::Approx(2.0));
  CHECK(h.energies()[2] == doctest::Approx(5.0));

  const auto wrapped = write_file("pauli.json", R"({"matrix":[[[0,0],[0,-1]],[[0,1],[0,0]]]})");
  const auto y = parse_ham_spec("matrix:" + wrapped.string());
  CHECK(y.energies()[0] == doctest::Approx(-1.0));

  const auto c = parse_ham_spec("composite:matrix:" + plain.string() + "xequispaced:d=2,E=1");
  CHECK(c.subsystem_dims() == std::vector<std::size_t>{3, 2});

  const auto bad = write_file("nonherm.json", "[[0,1],[0,0]]");
  CHECK(parse_code("matrix:" + bad.string()) == ErrorCode::NotHermitian);
  CHECK(parse_code("matrix:" + scratch("missing.json").string()) == ErrorCode::IoError);
}

TEST_CASE("ham spec: parse errors name the position") {
  for (const char* spec : {"", "equi:d=2,E=1", "equispaced:d=x,E=1", "equispaced:d=2,E=", "equispaced:d=2",
                           "equispaced:d=2,E=-1", "composite:", "composite:equispaced:d=2,E=1x",
                           "equispaced:d=2,E=1junk"}) {
    INFO(spec);
    CHECK(parse_code(spec) == ErrorCode::ParseError);
    CHECK(parse_message(spec).find("position") != std::string::npos);
  }
  CHECK(parse_message("equispaced:d=x,E=1").find("position 13") != std::string::npos);
}

TEST_CASE("default Hamiltonian") {
  const std::vector<std::size_t> one{3}, two{2, 2};
  CHECK(!default_hamiltonian(one).is_composite());
  CHECK(default_hamiltonian(one).energies().back() == doctest::Approx(2.0));
  CHECK(default_hamiltonian(two).is_composite());
}

TEST_CASE("capacity command") {
  const auto j = run_json("capacity", R"({"name":"qubit","q":0.3,"c":0.2})");
  CHECK(value(j["capacity"]) == doctest::Approx(std::sqrt(0.32)).epsilon(1e-12));
  CHECK(j["capacity"]["units"] == "absolute");
  CHECK(j["equispaced"]["levels"] == 2);
  CHECK(value(j["ergotropy"]) - value(j["antiergotropy"]) == doctest::Approx(value(j["capacity"])));

  const auto e = run_json("capacity", R"({"dims":[3],"matrix":[[1,0,0],[0,0,0],[0,0,0]]})", "equispaced:d=3,E=2");
  CHECK(value(e["capacity"]) == doctest::Approx(4.0));
  CHECK(value(e["equispaced"]["passive_plus_active"]) == doctest::Approx(4.0));
}

TEST_CASE("ergotropy command") {
  const auto j = run_json("ergotropy", R"({"name":"qubit","q":1.0,"c":0.0})");
  CHECK(value(j["ergotropy"]) == doctest::Approx(1.0));
  CHECK(j["passive_state"].size() == 2);
}

TEST_CASE("gap and multipartite commands") {
  const auto g = run_json("gap", kGhz);
  CHECK(value(g["fully_separable_gap"]) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g["bipartite_gaps"].size() == 3);
  CHECK(g["bipartite_gaps"][0]["partition"] == "A|BC");
  CHECK(g["bipartite_gaps"][1]["partition"] == "AB|C");
  CHECK(g["bipartite_gaps"][2]["partition"] == "AC|B");

  const auto m = run_json("multipartite", kGhz);
  CHECK(value(m["mbwcg"]) == doctest::Approx(2.0));
  CHECK(value(m["wcf"]) == doctest::Approx(std::sqrt(128.0)));
  CHECK(m["wcf"]["units"] == "absolute^2");
  CHECK(value(m["wcv"]) == doctest::Approx(2.0));

  const auto mixed = run_json("gap", R"({"name":"werner2","v":0.4,"theta":0.7853981633974483})");
  CHECK(mixed["measures"] == "not computed");
  CHECK(value(mixed["delta_in"]) == doctest::Approx(0.4));
  CHECK(mixed["closed_form_gap_2q"]["units"] == "E");

  const auto r = run("multipartite", R"({"name":"werner2","v":0.4,"theta":0.3})");
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error[NotPure]: ", 0) == 0);
}

TEST_CASE("total command") {
  const auto j = run_json("total", R"({"dims":[2],"matrix":[[0.3,0],[0,0.7]]})");
  CHECK(value(j["total_capacity"]) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(value(j["capacity"]) == doctest::Approx(0.4).epsilon(1e-9));
  const auto pure = run_json("total", R"({"dims":[3],"matrix":[[0,0,0],[0,1,0],[0,0,0]]})");
  CHECK(value(pure["total_capacity"]) == doctest::Approx(2.0));
  CHECK(pure["beta"] == "+inf");
  CHECK(pure["beta_negative"] == "-inf");
}

TEST_CASE("montecarlo command") {
  Command c;
  c.name = "montecarlo";
  c.state_source = R"({"name":"qubit","q":1.0,"c":0.0})";
  c.seed = 5;
  c.samples = 2000;
  const auto a = run_command(c);
  REQUIRE(a.exit_code == 0);
  const auto j = json::parse(a.output);
  CHECK(j["seed"] == 5);
  CHECK(value(j["analytic_variance"]) == doctest::Approx(1.0 / 12.0));
  CHECK(j["variance"]["units"] == "absolute^2");
  CHECK(run_command(c).output == a.output);

  c.csv = true;
  c.samples = 10;
  const auto csv = run_command(c);
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.rfind("index,work\n", 0) == 0);
  CHECK(std::count(csv.output.begin(), csv.output.end(), '\n') == 11);
}

TEST_CASE("validate and input errors") {
  const auto ok = run_json("validate", R"({"name":"w3"})");
  CHECK(ok["valid"] == true);
  CHECK(ok["purity"].get<double>() == doctest::Approx(1.0));

  const auto bad = run("validate", R"({"dims":[2],"matrix":[[0.5,0],[0,0.6]]})");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.rfind("error[InvalidState]: ", 0) == 0);
  CHECK(std::count(bad.output.begin(), bad.output.end(), '\n') == 1);

  CHECK(run("capacity", "{not json").output.rfind("error[ParseError]", 0) == 0);
  CHECK(run("capacity", R"({"name":"qubit","q":0.3,"c":0.2})", "equispaced:d=3,E=1").output.rfind(
            "error[DimensionMismatch]", 0) == 0);
  CHECK(run("capacity", R"({"name":"qubit","q":0.3,"c":0.2})", "equispaced:d=2,E=").exit_code == 1);
  CHECK(run("capacity", "").exit_code == 1);
  CHECK(run("frobnicate", R"({"name":"w3"})").exit_code == 1);
  CHECK(run("capacity", scratch("absent.json").string()).exit_code == 1);
  CHECK(is_numerical(ErrorCode::NoConvergence));
  CHECK(!is_numerical(ErrorCode::InvalidState));
}

TEST_CASE("state dims follow a composite Hamiltonian") {
  const auto j = run_json("gap", R"({"dims":[4],"matrix":[[0.5,0,0,0.5],[0,0,0,0],[0,0,0,0],[0.5,0,0,0.5]]})",
                          "composite:equispaced:d=2,E=1xequispaced:d=2,E=1");
  CHECK(value(j["delta_out"]) == doctest::Approx(1.0));
}

TEST_CASE("seed resolution") {
  CHECK(resolve_seed(7) == 7);
  ::unsetenv("ERGOKIT_SEED");
  CHECK(resolve_seed(std::nullopt) == kDefaultSeed);
  ::setenv("ERGOKIT_SEED", "1234", 1);
  CHECK(resolve_seed(std::nullopt) == 1234);
  CHECK(resolve_seed(9) == 9);
  ::setenv("ERGOKIT_SEED", "12x", 1);
  CHECK_THROWS_AS(resolve_seed(std::nullopt), Error);
  ::unsetenv("ERGOKIT_SEED");
}

TEST_CASE("out path") {
  const auto path = scratch("cap.json");
  fs::remove(path);
  Command c;
  c.name = "capacity";
  c.state_source = R"({"name":"qubit","q":0.3,"c":0.2})";
  c.out_path = path.string();
  const auto r = run_command(c);
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(path) == r.output);
  c.out_path = (scratch("no_such_dir") / "x" / "y.json").string();
  CHECK(run_command(c).output.rfind("error[IoError]", 0) == 0);
}

TEST_CASE("text output") {
  Command c;
  c.name = "capacity";
  c.state_source = R"({"name":"qubit","q":0.3,"c":0.2})";
  c.format = Format::Text;
  const auto r = run_command(c);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("capacity: 0.565685425 (absolute)") != std::string::npos);
  CHECK(fmt9(1.0 / 3.0) == "0.333333333");
}

TEST_CASE("reproduction report") {
  const auto a = paper_report(kDefaultSeed, 2000);
  const auto b = paper_report(kDefaultSeed, 2000);
  CHECK(a.dump() == b.dump());
  CHECK(render_markdown(a) == render_markdown(b));

  const auto& errata = a["errata"];
  auto find = [&](const std::string& needle) -> const nlohmann::ordered_json* {
    for (const auto& e : errata)
      if (e["location"].get<std::string>().find(needle) != std::string::npos) return &e;
    return nullptr;
  };
  for (const char* needle : {"Hamiltonian variance", "coefficient of the equispaced capacity bounds",
                             "variance inequality", "sqrt(l)|00>", "generalized GHZ", "antiergotropy of the two-level"}) {
    INFO(needle);
    const auto* e = find(needle);
    REQUIRE(e != nullptr);
    for (const char* field : {"printed", "computed", "oracle"}) CHECK(!(*e)[field].get<std::string>().empty());
  }
  CHECK((*find("Hamiltonian variance"))["printed"].get<std::string>().find("4") != std::string::npos);
  CHECK((*find("coefficient of the equispaced"))["printed"].get<std::string>().find("(0,0,1)") != std::string::npos);

  const auto md = render_markdown(a);
  CHECK(md.rfind("# ergokit reproduction report", 0) == 0);
  CHECK(md.find("\\|") != std::string::npos);
}

TEST_CASE("binary reports a single error line") {
  const auto err = scratch("stderr.txt");
  const std::string bin = ERGOKIT_BINARY;
  const int code = shell("'" + bin + "' capacity --state '{\"dims\":[2],\"matrix\":[[2,0],[0,0]]}' 2> '" +
                         err.string() + "' > /dev/null");
  CHECK(code == 1);
  const auto text = slurp(err);
  CHECK(text.rfind("error[InvalidState]: ", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);

  CHECK(shell("'" + bin + "' capacity --state '{\"name\":\"w3\"}' --ham bogus 2> '" + err.string() + "' > /dev/null") ==
        1);
  CHECK(slurp(err).rfind("error[ParseError]: ", 0) == 0);

  const auto out = scratch("stdout.txt");
  CHECK(shell("'" + bin + "' capacity --state '{\"name\":\"qubit\",\"q\":0.3,\"c\":0.2}' --format text > '" +
              out.string() + "'") == 0);
  CHECK(slurp(out).find("capacity: 0.565685425 (absolute)") != std::string::npos);
}
