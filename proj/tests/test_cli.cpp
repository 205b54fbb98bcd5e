// Copyright 2026 The Species Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int code;
  std::string out;
};

std::string quote(const std::string& arg) {
  std::string q = "'";
  for (char c : arg) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Result run(const std::vector<std::string>& args) {
  std::string cmd = quote(SPECIES_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string defs_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("species_cli_" + name + ".sp");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("count") {
  CHECK(run({"count", "Part", "8"}).out == "4140\n");
  CHECK(run({"count", "O", "3"}).out == "0\n");
  auto arbo = defs_file("arbo", "A = X*E(A)\n");
  auto r = run({"count", "A", "7", "--defs", arbo});
  CHECK(r.code == 0);
  CHECK(r.out == "117649\n");
  CHECK(run({"count", "Gra", "17"}).out == "87112285931760246646623899502532662132736\n");
  auto j = nlohmann::json::parse(run({"count", "S", "20", "--json"}).out);
  CHECK(j["count"] == "2432902008176640000");
}

TEST_CASE("series and solve") {
  CHECK(run({"series", "Gro", "5"}).out == "0 1\n1 2\n2 16\n3 512\n4 65536\n5 33554432\n");
  CHECK(run({"series", "1", "3"}).out == "0 1\n1 0\n2 0\n3 0\n");
  auto bin = defs_file("bin", "B = 1 + X*B^2\n");
  CHECK(run({"series", "B", "4", "--defs", bin}).out == "0 1\n1 1\n2 4\n3 30\n4 336\n");
  CHECK(run({"solve", "B", "--order", "4", "--defs", bin}).out == "0 1\n1 1\n2 4\n3 30\n4 336\n");
  CHECK(run({"solve", "Q", "4", "--defs", bin}).code == 1);
  auto j = nlohmann::json::parse(run({"series", "Part", "8", "--json"}).out);
  CHECK(j["counts"].back() == "4140");
}

TEST_CASE("enumerate") {
  CHECK(run({"enumerate", "Part", "a,b,c"}).out ==
        "{{a,b,c}}\n{{a,b},{c}}\n{{a,c},{b}}\n{{a},{b,c}}\n{{a},{b},{c}}\ncount: 5\n");
  CHECK(run({"enumerate", "X", "a"}).out == "{a}\ncount: 1\n");
  auto s = run({"enumerate", "S", "1,2,3"});
  CHECK(s.out.substr(s.out.rfind("count:")) == "count: 6\n");
  auto j = nlohmann::json::parse(run({"enumerate", "P", "3", "--json"}).out);
  CHECK(j["count"] == 8);
  CHECK(j["structures"].size() == 8);
  CHECK(j["structures"][0]["kind"] == "subset");
}

TEST_CASE("count agrees with the last line of enumerate") {
  for (const char* e : {"Der", "Inv", "E(C)", "pt(E)", "C'", "Pk[2]"}) {
    for (int n = 0; n <= 4; ++n) {
      auto c = run({"count", e, std::to_string(n)}).out;
      auto listing = run({"enumerate", e, std::to_string(n)}).out;
      CHECK(listing.substr(listing.rfind("count: ") + 7) == c);
    }
  }
}

TEST_CASE("transport") {
  CHECK(run({"transport", "P", R"({"kind":"subset","ground":["1","2","3"],"chosen":["1","3"]})", "1->a,2->b,3->c"})
            .out == "{\"kind\":\"subset\",\"ground\":[\"a\",\"b\",\"c\"],\"chosen\":[\"a\",\"c\"]}\n");
  CHECK(run({"transport", "S", R"({"kind":"map","pairs":[["1","2"],["2","1"],["3","3"]]})", "1->b,2->a,3->c"}).out ==
        "{\"kind\":\"map\",\"pairs\":[[\"a\",\"b\"],[\"b\",\"a\"],[\"c\",\"c\"]]}\n");
  const std::string cycle = R"({"kind":"cycle","labels":["1","3","2"]})";
  CHECK(run({"transport", "C", cycle, "1->1,2->2,3->3"}).out == cycle + "\n");
}

TEST_CASE("exit codes") {
  CHECK(run({"count", "X +", "3"}).code == 1);
  CHECK(run({"count", "E(E)", "3"}).code == 1);
  CHECK(run({"count", "Q", "3"}).code == 1);
  CHECK(run({"count", "X", "--defs", "/nonexistent/defs.sp", "2"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"enumerate", "Gro", "6", "--budget", "1000"}).code == 3);
  CHECK(run({"transport", "S", R"({"kind":"map","pairs":[["1","2"],["2","1"]]})", "1->a,3->b"}).code == 4);
  CHECK(run({"transport", "C", R"({"kind":"map","pairs":[["1","2"],["2","1"]]})", "1->a,2->b"}).code == 1);
  CHECK(run({"transport", "S", R"({"kind":"map","pairs":[["1","2"],["2","1"]]})", "1->a,2->a"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify") {
  auto all = run({"verify"});
  CHECK(all.code == 0);
  CHECK(all.out.find("FAIL") == std::string::npos);
  auto one = run({"verify", "--case", "C'=L"});
  CHECK(one.code == 0);
  CHECK(one.out.find("2/2 checks passed") != std::string::npos);
  CHECK(run({"verify", "--order", "0"}).code == 0);
  CHECK(run({"verify", "--case", "nope"}).code == 1);

  auto first = run({"verify", "--case", "table:Part", "--json"}).out;
  auto second = run({"verify", "--case", "table:Part", "--json"}).out;
  CHECK(first == second);
  CHECK(nlohmann::json::parse(first)["passed"] == true);

  auto defs = defs_file("verify", "A = X*E(A)\nV = pt(A)\n");
  auto with_defs = nlohmann::json::parse(run({"verify", "--defs", defs, "--order", "4", "--json"}).out);
  CHECK(with_defs["passed"] == true);
  bool saw_v = false;
  for (const auto& c : with_defs["cases"]) saw_v = saw_v || c["name"] == "defs:V";
  CHECK(saw_v);
}
