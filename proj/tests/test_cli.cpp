#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli()
{
    const char* p = std::getenv("SPINC_CLI");
    REQUIRE_MESSAGE(p, "SPINC_CLI is not set");
    return p;
}

int run(const std::string& args, const std::string& env = {})
{
    std::string cmd = env + (env.empty() ? "" : " ") + cli() + " " + args + " 2>/dev/null >/dev/null";
    int st = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

fs::path scratch(const std::string& name)
{
    auto d = fs::temp_directory_path() / ("spinc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d / name;
}

json load(const fs::path& p)
{
    std::ifstream f(p);
    return json::parse(f);
}

json strip_runtime(json j)
{
    for (auto& c : j["checks"])
        c.erase("runtime_ms");
    return j;
}

}  // namespace

TEST_CASE("series suite")
{
    auto out = scratch("series.json");
    CHECK(run("--suite series --out " + out.string()) == 0);
    auto j = load(out);
    CHECK(j["version"] == "1");
    CHECK(j["config"]["trunc"] == 256);
    std::set<std::string> ids;
    for (const auto& c : j["checks"]) {
        CHECK(c["status"] == "pass");
        ids.insert(c["check_id"].get<std::string>());
    }
    CHECK(ids.count("series.jacobi_theta"));
    CHECK(ids.count("series.ahat_closed_equals_alpha_closed"));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
}

TEST_CASE("identity suite ends with ahat_equals_alpha")
{
    auto out = scratch("identity.json");
    CHECK(run("--suite identity --q 3 --n-max 8 --out " + out.string()) == 0);
    auto j = load(out);
    REQUIRE(!j["checks"].empty());
    const auto& last = j["checks"].back();
    CHECK(last["check_id"] == "ahat_equals_alpha");
    CHECK(last["status"] == "pass");
    CHECK(last["params"]["q"] == 3);
}

TEST_CASE("oracle suite reports class counts")
{
    auto out = scratch("oracle.json");
    CHECK(run("--suite oracle --q 3 --out " + out.string()) == 0);
    auto j = load(out);
    std::map<std::string, std::string> groups;
    for (const auto& c : j["checks"])
        if (c["check_id"] == "oracle.group" && c["params"]["N"] == 4)
            groups[c["params"]["type"].get<std::string>()] = c["actual"].get<std::string>();
    CHECK(groups["plus"] == "576 elements, 49 classes");
    CHECK(groups["minus"] == "720 elements, 13 classes");
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run("--suite nonsense") == 2);
    CHECK(run("--q 4 --suite series") == 2);
    CHECK(run("--q 3 --n-max 7 --suite delta") == 2);
    CHECK(run("--q 3 --n-max 14 --suite delta") == 2);
    CHECK(run("--trunc 2 --suite series") == 2);
    CHECK(run("--no-such-flag") == 2);
    CHECK(run("--suite series --out /nonexistent_dir/x.json") == 2);
}

TEST_CASE("reports do not depend on the number of jobs")
{
    auto a = scratch("j1.json"), b = scratch("j3.json");
    std::string args = "--suite delta,dualcount --q 3,5 --n-max 6 --d-cap 6";
    CHECK(run(args + " --jobs 1 --out " + a.string()) == 0);
    CHECK(run(args + " --jobs 3 --out " + b.string()) == 0);
    CHECK(strip_runtime(load(a)).dump() == strip_runtime(load(b)).dump());
}

TEST_CASE("every check id has one reference string")
{
    auto out = scratch("mix.json");
    CHECK(run("--suite orbits,classcount --q 3 --n-max 6 --d-cap 6 --out " + out.string()) == 0);
    std::map<std::string, std::string> ref;
    auto j = load(out);
    for (const auto& c : j["checks"]) {
        auto id = c["check_id"].get<std::string>();
        auto r = c["ref"].get<std::string>();
        CHECK(!r.empty());
        auto [it, fresh] = ref.emplace(id, r);
        CHECK(it->second == r);
    }
    CHECK(ref.size() >= 4);
}

TEST_CASE("census cache directory")
{
    auto dir = scratch("cache");
    fs::create_directories(dir);
    std::string env = "SPINC_CENSUS_CACHE=" + dir.string();
    auto a = scratch("c1.json"), b = scratch("c2.json");
    CHECK(run("--suite orbits --q 3 --d-cap 6 --out " + a.string(), env) == 0);
    CHECK(!fs::is_empty(dir));
    CHECK(run("--suite orbits --q 3 --d-cap 6 --out " + b.string(), env) == 0);
    CHECK(strip_runtime(load(a)).dump() == strip_runtime(load(b)).dump());
    fs::remove_all(dir.parent_path());
}
