#include "cli.hpp"
#include "spherewarp/render.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spherewarp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "spherewarp");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory holding a small synthetic panorama.
struct Scratch {
    fs::path dir;
    std::string pano;

    Scratch()
    {
        dir = fs::temp_directory_path() / "spherewarp_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        pano = (dir / "pano.png").string();
        save_png(pano, testing::make_test_panorama(512, 256));
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

double kv_value(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + "=", 0) == 0) {
            return std::stod(line.substr(key.size() + 1));
        }
    }
    FAIL("missing key " << key);
    return 0.0;
}

}  // namespace

TEST_CASE("cli usage errors")
{
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"bogus"}).code == cli::kExitUsage);
    CHECK(run_cli({"render", "--input", "a.png"}).code == cli::kExitUsage);
    const Result r = run_cli({"distortion", "--projection", "fisheye", "--fov", "90"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("usage error") != std::string::npos);
    CHECK(run_cli({"distortion", "--projection", "perspective", "--fov", "400"}).code == cli::kExitUsage);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("cli info")
{
    const Result r = run_cli({"info"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("SPHEREWARP_THREADS") != std::string::npos);
}

TEST_CASE("cli distortion")
{
    const Result r = run_cli({"distortion", "--projection", "perspective", "--fov", "1", "--format", "kv"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(kv_value(r.out, "delta") < 1e-4);
    CHECK(kv_value(r.out, "grid_n") == 50);
    CHECK(kv_value(r.out, "pair_count") == 2500.0 * 2499 / 2);

    const Result table = run_cli({"distortion", "--projection", "mobius", "--fov", "172", "--grid", "10"});
    CHECK(table.code == cli::kExitOk);
    CHECK(table.out.find("delta") != std::string::npos);

    // a perspective view cannot reach 180 degrees
    CHECK(run_cli({"distortion", "--projection", "perspective", "--fov", "200"}).code == cli::kExitUsage);
}

TEST_CASE("cli render")
{
    Scratch s;
    const Result mob = run_cli({"render", "--input", s.pano, "--output", s.path("m.png"), "--projection", "mobius",
                                "--fov", "30", "--width", "160", "--height", "120", "--yaw", "25"});
    REQUIRE(mob.code == cli::kExitOk);
    const Result per = run_cli({"render", "--input", s.pano, "--output", s.path("p.png"), "--projection",
                                "perspective", "--fov", "30", "--width", "160", "--height", "120", "--yaw", "25"});
    REQUIRE(per.code == cli::kExitOk);
    const Image a = load_image(s.path("m.png"));
    CHECK(a.width() == 160);
    CHECK(a.height() == 120);
    CHECK(a == load_image(s.path("p.png")));

    const Result missing = run_cli({"render", "--input", s.path("nope.png"), "--output", s.path("x.png"),
                                    "--projection", "mobius", "--fov", "120"});
    CHECK(missing.code == cli::kExitProcessing);
    CHECK(missing.err.find("error [load]") != std::string::npos);

    const Result unwritable = run_cli({"render", "--input", s.pano, "--output", s.path("no/such/dir/x.png"),
                                       "--projection", "mobius", "--fov", "120", "--width", "32", "--height", "24"});
    CHECK(unwritable.code == cli::kExitProcessing);
    CHECK(unwritable.err.find("error [write]") != std::string::npos);
}

TEST_CASE("cli compare")
{
    Scratch s;
    const Result r = run_cli({"compare", "--input", s.pano, "--output-dir", s.path("cmp"), "--fov", "160", "--width",
                              "96", "--height", "72"});
    CHECK(r.code == cli::kExitOk);
    for (const char* name :
         {"perspective.png", "stereographic.png", "mercator.png", "mobius_60.png", "mobius_120.png"}) {
        const fs::path p = fs::path(s.path("cmp")) / name;
        INFO(name);
        CHECK(fs::exists(p));
    }
}

TEST_CASE("cli vectors")
{
    Scratch s;
    const Result r = run_cli({"vectors", "--spec", "kind=mobius fov_deg=172 yaw_deg=10", "--n", "50", "--output",
                              s.path("v.txt")});
    REQUIRE(r.code == cli::kExitOk);
    std::ifstream in(s.path("v.txt"));
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        const ParsedTestVector p = parse_test_vector(line);
        CHECK(p.spec.kind == ProjectionKind::mobius);
        CHECK(p.spec.view.fov == doctest::Approx(deg_to_rad(172)));
        ++count;
    }
    CHECK(count == 50);

    const Result flags = run_cli({"vectors", "--projection", "stereographic", "--fov", "200", "--n", "3", "--output",
                                  s.path("w.txt")});
    CHECK(flags.code == cli::kExitOk);

    CHECK(run_cli({"vectors", "--spec", "kind=mobius fov_deg=90", "--projection", "mobius", "--n", "3", "--output",
                   s.path("x.txt")})
              .code == cli::kExitUsage);
    CHECK(run_cli({"vectors", "--spec", "kind=mobius fov_deg=90", "--n", "0", "--output", s.path("x.txt")}).code ==
          cli::kExitUsage);
    CHECK(run_cli({"vectors", "--spec", "kind=perspective fov_deg=190", "--n", "3", "--output", s.path("x.txt")})
              .code == cli::kExitUsage);
}
