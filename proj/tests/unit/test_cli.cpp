#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "output.hpp"
#include "revprime/error.hpp"

using namespace revprime;
using namespace revprime::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stderr is discarded; the tests look at stdout and the exit status only.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + REVPRIME_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("revprime_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

struct EnvGuard {
  explicit EnvGuard(const char* k) : key(k) {}
  ~EnvGuard() { unsetenv(key); }
  const char* key;
};

}  // namespace

TEST_CASE("parsers") {
  CHECK(parse_count("1000", "x") == 1000);
  CHECK(parse_count("1e6", "x") == 1000000);
  CHECK(parse_count("2.5e3", "x") == 2500);
  CHECK_THROWS_AS(parse_count("1.5", "x"), DomainError);
  CHECK_THROWS_AS(parse_count("-3", "x"), DomainError);
  CHECK_THROWS_AS(parse_count("", "x"), DomainError);
  CHECK(parse_signed("-7", "a") == -7);
  CHECK(parse_range("10..20", "r") == std::pair<std::uint64_t, std::uint64_t>{10, 20});
  CHECK_THROWS_AS(parse_range("20..10", "r"), DomainError);
  CHECK(parse_count_list("1..4", "q") == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(parse_count_list("3,7,1e1", "q") == std::vector<std::uint64_t>{3, 7, 10});
  CHECK(parse_duration("90") == 90.0);
  CHECK(parse_duration("2m") == 120.0);
  CHECK(parse_duration("1h") == 3600.0);
  CHECK_THROWS_AS(parse_duration("5d"), DomainError);
  CHECK(parse_format("csv") == Format::csv);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("rendering") {
  CHECK(render(Value{}, Format::json) == "null");
  CHECK(render(Value{0.1}, Format::json) == "0.10000000000000001");
  CHECK(render(Value{std::nan("")}, Format::json) == "null");
  CHECK(render(Value{std::nan("")}, Format::csv) == "nan");
  CHECK(render(Value{std::string("a\"b")}, Format::json) == "\"a\\\"b\"");
  CHECK(render(Value{std::string("a,b")}, Format::csv) == "\"a,b\"");
  CHECK(render(Value{true}, Format::csv) == "true");
}

TEST_CASE("config precedence: flags over env over file over defaults") {
  const auto cfg = temp_file("prec.cfg", "# test\nbase = 7\nthreads = 5\ncache_dir = /from/file\nseed = 9\n");
  FlagValues flags;
  flags.config = cfg.string();

  RunConfig c = resolve_config(flags, "/default");
  CHECK(c.base == 7);
  CHECK(c.threads == 5);
  CHECK(c.cache_dir == "/from/file");
  CHECK(c.seed == 9);
  CHECK(c.fixtures_path == "/default");

  {
    EnvGuard g1("REVPRIME_THREADS"), g2("REVPRIME_CACHE_DIR");
    setenv("REVPRIME_THREADS", "3", 1);
    setenv("REVPRIME_CACHE_DIR", "/from/env", 1);
    c = resolve_config(flags, "/default");
    CHECK(c.threads == 3);
    CHECK(c.cache_dir == "/from/env");

    flags.threads = 2;
    flags.cache_dir = "/from/flag";
    flags.base = 10;
    c = resolve_config(flags, "/default");
    CHECK(c.threads == 2);
    CHECK(c.cache_dir == "/from/flag");
    CHECK(c.base == 10);

    setenv("REVPRIME_THREADS", "many", 1);
    flags.threads.reset();
    CHECK_THROWS_AS(resolve_config(flags, "/default"), DomainError);
  }

  const RunConfig d = resolve_config(FlagValues{}, "/default");
  CHECK(d.base == 10);
  CHECK(d.threads == 0);
  CHECK(d.cache_dir.empty());
  CHECK(d.format == Format::json);

  FlagValues bad;
  bad.config = temp_file("bad.cfg", "colour = blue\n").string();
  CHECK_THROWS_AS(resolve_config(bad, "/default"), DomainError);
  bad.config = temp_file("bad2.cfg", "base\n").string();
  CHECK_THROWS_AS(resolve_config(bad, "/default"), DomainError);
  FlagValues one;
  one.base = 1;
  CHECK_THROWS_AS(resolve_config(one, "/default"), DomainError);
}

TEST_CASE("cli: enumerate") {
  const Run r = run("enumerate --limit 40");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 15);
  CHECK(r.out.find("\"n\":32,\"p\":23") != std::string::npos);
  CHECK(r.out.find("\"n\":13,\"p\":31,\"weight\":3.4339872044851463,\"coprime\":true") != std::string::npos);

  const Run empty = run("enumerate --limit 1");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
  const Run header = run("--format csv enumerate --limit 1");
  CHECK(header.code == 0);
  CHECK(header.out == "command,n,p,weight,coprime\n");

  const Run csv = run("--format csv enumerate --limit 20 --coprime");
  CHECK(csv.out.rfind("command,n,p,weight,coprime\n", 0) == 0);
  CHECK(lines(csv.out) == 4);  // 7, 13, 17
}

TEST_CASE("cli: exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--base 1 enumerate --limit 5").code == 2);
  CHECK(run("enumerate").code == 2);
  CHECK(run("enumerate --limit -4").code == 2);
  CHECK(run("represent --n 600 --family r77").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("enumerate --limit 5", "REVPRIME_THREADS=abc").code == 2);
  CHECK(run("verify --suite asymptotics --fixtures /nonexistent/fixtures.txt").code != 0);
  CHECK(run("schnirelmann gap --i 2 --L 2").code == 0);
}

TEST_CASE("cli: representation and obstruction examples") {
  const Run r = run("represent --n 600 --family r0k --k 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"observed\":0,") != std::string::npos);
  CHECK(r.out.find("\"provenance\":\"exact\"") != std::string::npos);

  const Run gap = run("schnirelmann gap --i 2 --L 2");
  CHECK(gap.out.find("\"lo\":12,\"hi\":24,\"reversed_prime_count\":0") != std::string::npos);

  const Run none = run("schnirelmann min-k --n 600 --k-max 2");
  CHECK(none.code == 0);
  CHECK(none.out.find("\"k\":null") != std::string::npos);
  const Run three = run("schnirelmann min-k --n 600 --k-max 4");
  CHECK(three.out.find("\"k\":3") != std::string::npos);
}

TEST_CASE("cli: seeded probes match the fixtures") {
  const Run w = run("circle weyl --n 100000 --kind bset --samples 1000");
  CHECK(w.code == 0);
  const auto pos = w.out.find("\"max_ratio\":");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(w.out.substr(pos + 12)) == doctest::Approx(0.29974629384173995).epsilon(1e-9));
}

TEST_CASE("cli: output is deterministic and independent of the thread count") {
  const std::string args = "represent --range 100..400 --family r12";
  const Run a = run("--threads 1 " + args);
  const Run b = run("--threads 4 " + args);
  CHECK(a.code == 0);
  CHECK(lines(a.out) == 301);
  CHECK(a.out == b.out);
  CHECK(run("--threads 4 " + args).out == b.out);
  const Run t = run("--timing " + args);
  CHECK(t.out.find("runtime_ms") != std::string::npos);
  CHECK(a.out.find("runtime_ms") == std::string::npos);
}

TEST_CASE("cli: config file and flag precedence") {
  const auto cfg = temp_file("cli.cfg", "base = 7\nformat = csv\n");
  const Run f = run("--config " + cfg.string() + " represent --n 600 --family r11");
  CHECK(f.out.rfind("command,", 0) == 0);
  CHECK(f.out.find(",7,") != std::string::npos);
  const Run g = run("--config " + cfg.string() + " --base 10 --format json represent --n 600 --family r11");
  CHECK(g.out.find("\"base\":10") != std::string::npos);
}

TEST_CASE("cli: verify identities") {
  const Run v = run("verify --suite identities");
  CHECK(v.code == 0);
  CHECK(lines(v.out) == 6);
  CHECK(v.out.find("\"passed\":false") == std::string::npos);
}
