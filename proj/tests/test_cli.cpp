#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "format.hpp"
#include "oracles.hpp"

using gaussq::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("number formatting") {
  using gaussq::cli::format_number;
  CHECK(format_number(0.1, 12) == "0.1");
  CHECK(format_number(1.0 / 3.0, 12) == "0.333333333333");
  CHECK(format_number(2.0 / 3.0, 3) == "0.667");
  CHECK(format_number(1e-20, 12) == "1e-20");
  CHECK(format_number(123456789.0, 4) == "123500000");
  CHECK(format_number(1.5e300, 4) == "1.5e+300");
  CHECK(format_number(INFINITY, 12) == "inf");
  CHECK(format_number(-INFINITY, 12) == "-inf");
  CHECK(format_number(0.0, 12) == "0");
  CHECK(format_number(-0.0, 12) == "0");
}

TEST_CASE("channel values on the command line") {
  auto r = call({"channel", "attenuator", "--eta", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exact: 1.09861228867\n") != std::string::npos);
  CHECK(r.out.find("key_capacity: 0.69314718056\n") != std::string::npos);
  r = call({"channel", "attenuator", "--eta", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "channel,kappa,eta,lower,upper,exact,key_capacity,provenance\n"
                 "attenuator,,1,inf,inf,inf,inf,channel-limit;comparison\n");
  r = call({"channel", "attenuator", "--eta", "1", "--format", "json"});
  CHECK(r.out.find("\"exact\": \"inf\"") != std::string::npos);
}

TEST_CASE("bounds on the command line") {
  auto r = call({"bounds", "tms", "--kappa", "1", "--energy", "5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "family,kappa,eta,E,lower,upper,provenance\ntms,1,,5,0,0,conditional-epi;gaussian-extension\n");
  r = call({"bounds", "tms", "--kappa", "2", "--energy", "1", "--precision", "4"});
  CHECK(r.out.find("lower: 1.099\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"bounds"}).code == 2);
  CHECK(call({"bounds", "tms", "--kappa", "2"}).code == 2);
  CHECK(call({"bounds", "tms", "--kappa", "x", "--energy", "1"}).code == 2);
  CHECK(call({"bounds", "tms", "--kappa", "2", "--energy", "1", "--format", "xml"}).code == 2);
  CHECK(call({"verify", "nonsense"}).code == 2);
  CHECK(call({"figure1", "--format", "text"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"bounds", "tms", "--kappa", "0.5", "--energy", "1"}).code == 3);
  CHECK(call({"channel", "amplifier", "--kappa", "-1"}).code == 3);
  CHECK(call({"figure1", "--emin", "2", "--emax", "1"}).code == 3);
  CHECK(call({"figure1", "--output", "/nonexistent-dir/x.csv"}).code == 4);
  const auto refused = call({"oracle", "cmi", "--kappa", "2", "--energy", "2", "--eta", "0.5", "--cutoff", "40"});
  CHECK(refused.code == 5);
  CHECK(refused.err.find("required cutoff N >= 127") != std::string::npos);
  CHECK(call({"verify", "corollary-map", "--tolerance", "0"}).code == 1);
  CHECK(call({"verify", "corollary-map"}).code == 0);
}

TEST_CASE("oracle commands agree across routes") {
  auto r = call({"oracle", "channel", "--kind", "amp", "--param", "2", "--energy", "1", "--cutoff", "80", "--format",
                 "csv", "--precision", "17"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header == "quantity,kind,kappa,eta,E,cutoff,fock,gaussian,difference");
  const double diff = std::stod(line.substr(line.rfind(',') + 1));
  CHECK(std::abs(diff) < 1e-6);
  r = call({"oracle", "channel", "--kind", "att", "--param", "1", "--energy", "1", "--cutoff", "40", "--format", "csv"});
  CHECK(std::abs(std::stod(r.out.substr(r.out.rfind(',') + 1))) < 1e-10);
  r = call({"oracle", "cmi", "--kappa", "1", "--energy", "1", "--eta", "0.5", "--cutoff", "30", "--format", "csv"});
  CHECK(std::abs(std::stod(r.out.substr(r.out.rfind(',') + 1))) < 1e-12);
}

TEST_CASE("figure1 output") {
  const auto a = call({"figure1", "--jobs", "1"});
  const auto b = call({"figure1", "--jobs", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::string header;
  const auto rows = parse_csv(a.out, header);
  CHECK(header == "kappa,E,esq_lower,esq_upper,esq_classical");
  REQUIRE(rows.size() == 600);
  CHECK(rows[0][0] == 1.5);
  CHECK(rows[0][1] == 0.0);
  CHECK(std::abs(rows[0][2] - std::log(2.0)) < 1e-11);
  CHECK(std::abs(rows[0][3] - oracle::g(0.5)) < 1e-11);
  CHECK(std::abs(rows[0][4] - oracle::g(0.5)) < 1e-11);
  CHECK(rows[199][1] == 1.0);
  CHECK(rows[200][0] == 2.0);
  for (const auto& row : rows) {
    CHECK(row[2] <= row[3]);
    CHECK(row[3] <= row[4] + 1e-11);
    CHECK(row[3] - row[2] <= 1.0 - std::log(2.0));
  }
  const std::string path = "figure1_test_output.csv";
  CHECK(call({"figure1", "--output", path}).code == 0);
  std::ifstream file(path, std::ios::binary);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == a.out);
  std::remove(path.c_str());
}
