#include "cli.hpp"

#include "spherewarp/distortion.hpp"
#include "spherewarp/error.hpp"
#include "spherewarp/render.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spherewarp::cli {

namespace {

constexpr double kDefaultFovMaxDeg = 60.0;
constexpr int kDefaultWidth = 1024;
constexpr int kDefaultHeight = 768;
constexpr int kDefaultGrid = 50;

// Angles stay in degrees here and are converted once, in make_spec.
struct ViewFlags {
    std::string projection;
    double fov_deg = 0.0;
    double fov_max_deg = kDefaultFovMaxDeg;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double pannini_d = 1.0;
};

struct UsageError {
    std::string message;
};

// Processing failure tagged with the pipeline stage that raised it.
struct StageError {
    std::string stage;
    std::string message;
};

void add_view_flags(CLI::App* cmd, ViewFlags& f, bool projection_required)
{
    auto* p = cmd->add_option("--projection", f.projection, "mobius | perspective | stereographic | mercator | pannini")
                  ->check(CLI::IsMember({"mobius", "perspective", "stereographic", "mercator", "pannini"}));
    if (projection_required) {
        p->required();
    }
    cmd->add_option("--fov", f.fov_deg, "horizontal field of view, degrees")->check(CLI::Range(0.0, 355.0));
    cmd->add_option("--fov-max", f.fov_max_deg, "perspective threshold, degrees")
        ->check(CLI::Range(0.0, 180.0))
        ->capture_default_str();
    cmd->add_option("--yaw", f.yaw_deg, "view azimuth, degrees")->capture_default_str();
    cmd->add_option("--pitch", f.pitch_deg, "view altitude, degrees")->capture_default_str();
    cmd->add_option("--pannini-d", f.pannini_d, "pannini projection distance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

ProjectionSpec make_spec(const ViewFlags& f, double aspect)
{
    ProjectionSpec spec;
    try {
        spec.kind = parse_projection_kind(f.projection);
    } catch (const Error& e) {
        throw UsageError{"--projection: " + std::string(e.what())};
    }
    spec.view.fov = deg_to_rad(f.fov_deg);
    spec.view.fov_max = deg_to_rad(f.fov_max_deg);
    spec.view.yaw = deg_to_rad(f.yaw_deg);
    spec.view.pitch = deg_to_rad(f.pitch_deg);
    spec.view.aspect = aspect;
    spec.pannini_d = f.pannini_d;
    try {
        spec.validate();
    } catch (const Error& e) {
        throw UsageError{"--fov/--fov-max/--pannini-d: " + std::string(e.what())};
    }
    return spec;
}

EquirectImage load_panorama(const std::string& path)
{
    try {
        return EquirectImage(load_image(path));
    } catch (const Error& e) {
        throw StageError{"load", e.what()};
    }
}

void render_to(const EquirectImage& pano, const RenderRequest& req, const std::string& path, std::ostream& out)
{
    Image image;
    try {
        image = render(pano, req);
    } catch (const Error& e) {
        throw StageError{"render", e.what()};
    }
    try {
        save_png(path, image);
    } catch (const Error& e) {
        throw StageError{"write", e.what()};
    }
    out << "wrote " << path << " (" << to_key_values(req.spec) << ")\n";
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void print_report(std::ostream& out, const ProjectionSpec& spec, const DistortionReport& r, bool kv)
{
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"projection", std::string(to_string(spec.kind))},
        {"fov_deg", fmt(rad_to_deg(r.fov))},
        {"fov_max_deg", fmt(rad_to_deg(spec.view.fov_max))},
        {"grid_n", std::to_string(r.grid_n)},
        {"pair_count", std::to_string(r.pair_count)},
        {"sigma_min", fmt(r.sigma_min)},
        {"sigma_max", fmt(r.sigma_max)},
        {"delta", fmt(r.delta)},
    };
    for (const auto& [key, value] : rows) {
        if (kv) {
            out << key << '=' << value << '\n';
        } else {
            char line[96];
            std::snprintf(line, sizeof line, "%-12s %s\n", key.c_str(), value.c_str());
            out << line;
        }
    }
}

void print_info(std::ostream& out)
{
    out << "spherewarp conventions\n"
           "  world frame      +y up, forward (azimuth 0, altitude 0) is -z, azimuth turns toward +x\n"
           "  view rotation    about y by -yaw, then about x by -pitch; view center lands on (0,0,-1)\n"
           "  stereographic    (2x/(1-z), 2y/(1-z)), pole (0,0,1), origin at the view center\n"
           "  mobius           rho = min(1, fov_max/fov); z -> rho z conjugated by the stereographic map,\n"
           "                   then a perspective projection that puts the fov edge on |u| = 1\n"
           "  plane            u in [-1, 1] across the horizontal fov, v in [-1/aspect, 1/aspect], v up\n"
           "  equirect input   pixel (i, j) center: azimuth ((i+0.5)/w - 0.5) 2pi, altitude (0.5 - (j+0.5)/h) pi\n"
           "  angles           degrees on the command line, radians internally\n"
           "defaults\n"
           "  --fov-max 60  --yaw 0  --pitch 0  --width 1024  --height 768  --pannini-d 1\n"
           "  --filter bilinear  --grid 50\n"
           "  SPHEREWARP_THREADS overrides the worker count\n"
           "exit status: 0 ok, 1 processing error, 2 usage error\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Wide-angle panorama projections with a Mobius shrink", "spherewarp"};
    app.require_subcommand(1);

    ViewFlags render_view;
    std::string render_input, render_output, filter_name = "bilinear";
    int width = kDefaultWidth, height = kDefaultHeight;
    auto* render_cmd = app.add_subcommand("render", "render one projection of an equirectangular panorama to PNG");
    render_cmd->add_option("--input", render_input, "equirectangular PNG or JPEG")->required();
    render_cmd->add_option("--output", render_output, "output PNG")->required();
    add_view_flags(render_cmd, render_view, true);
    render_cmd->get_option("--fov")->required();
    render_cmd->add_option("--width", width)->check(CLI::PositiveNumber)->capture_default_str();
    render_cmd->add_option("--height", height)->check(CLI::PositiveNumber)->capture_default_str();
    render_cmd->add_option("--filter", filter_name)->check(CLI::IsMember({"nearest", "bilinear"}))->capture_default_str();

    ViewFlags dist_view;
    int grid = kDefaultGrid;
    std::string format = "table";
    auto* dist_cmd = app.add_subcommand("distortion", "Milnor distortion of a projection over the FOV cap");
    add_view_flags(dist_cmd, dist_view, true);
    dist_cmd->get_option("--fov")->required();
    dist_cmd->add_option("--grid", grid, "grid_n (grid_n x grid_n points)")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    dist_cmd->add_option("--format", format, "table | kv")->check(CLI::IsMember({"table", "kv"}))->capture_default_str();

    std::string compare_input, compare_dir;
    double compare_fov = 0.0, compare_yaw = 0.0, compare_pitch = 0.0;
    int compare_width = kDefaultWidth, compare_height = kDefaultHeight;
    auto* compare_cmd = app.add_subcommand(
        "compare", "render perspective, stereographic, mercator and mobius (60 and 120 degree fov-max)");
    compare_cmd->add_option("--input", compare_input)->required();
    compare_cmd->add_option("--output-dir", compare_dir)->required();
    compare_cmd->add_option("--fov", compare_fov)->required()->check(CLI::Range(0.0, 355.0));
    compare_cmd->add_option("--yaw", compare_yaw)->capture_default_str();
    compare_cmd->add_option("--pitch", compare_pitch)->capture_default_str();
    compare_cmd->add_option("--width", compare_width)->check(CLI::PositiveNumber)->capture_default_str();
    compare_cmd->add_option("--height", compare_height)->check(CLI::PositiveNumber)->capture_default_str();

    ViewFlags vec_view;
    std::string vec_spec, vec_output;
    double vec_aspect = static_cast<double>(kDefaultWidth) / kDefaultHeight;
    std::size_t vec_n = 0;
    auto* vec_cmd = app.add_subcommand("vectors", "write projection parity vectors for the viewer");
    auto* spec_opt = vec_cmd->add_option("--spec", vec_spec, "key=value list, e.g. \"kind=mobius fov_deg=172\"");
    add_view_flags(vec_cmd, vec_view, false);
    vec_cmd->add_option("--aspect", vec_aspect)->check(CLI::PositiveNumber)->capture_default_str();
    vec_cmd->add_option("--n", vec_n, "record count")->required()->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
    vec_cmd->add_option("--output", vec_output)->required();
    for (const char* name : {"--projection", "--fov", "--fov-max", "--yaw", "--pitch", "--pannini-d", "--aspect"}) {
        spec_opt->excludes(vec_cmd->get_option(name));
    }

    auto* info_cmd = app.add_subcommand("info", "print conventions and defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        err << "run 'spherewarp --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (*render_cmd) {
            RenderRequest req;
            req.out_width = width;
            req.out_height = height;
            req.filter = parse_filter(filter_name);
            req.spec = make_spec(render_view, static_cast<double>(width) / height);
            const EquirectImage pano = load_panorama(render_input);
            render_to(pano, req, render_output, out);
        } else if (*dist_cmd) {
            const ProjectionSpec spec = make_spec(dist_view, static_cast<double>(kDefaultWidth) / kDefaultHeight);
            DistortionReport report;
            try {
                report = milnor_distortion(spec, grid);
            } catch (const Error& e) {
                throw StageError{"distortion", e.what()};
            }
            print_report(out, spec, report, format == "kv");
        } else if (*compare_cmd) {
            struct Entry {
                const char* file;
                const char* projection;
                double fov_max_deg;
            };
            const Entry entries[] = {
                {"perspective.png", "perspective", kDefaultFovMaxDeg},
                {"stereographic.png", "stereographic", kDefaultFovMaxDeg},
                {"mercator.png", "mercator", kDefaultFovMaxDeg},
                {"mobius_60.png", "mobius", 60.0},
                {"mobius_120.png", "mobius", 120.0},
            };
            std::vector<RenderRequest> requests;
            for (const Entry& e : entries) {
                ViewFlags f;
                f.projection = e.projection;
                f.fov_deg = compare_fov;
                f.fov_max_deg = e.fov_max_deg;
                f.yaw_deg = compare_yaw;
                f.pitch_deg = compare_pitch;
                RenderRequest req;
                req.out_width = compare_width;
                req.out_height = compare_height;
                req.spec = make_spec(f, static_cast<double>(compare_width) / compare_height);
                requests.push_back(req);
            }
            const EquirectImage pano = load_panorama(compare_input);
            std::error_code ec;
            std::filesystem::create_directories(compare_dir, ec);
            if (ec) {
                throw StageError{"write", "cannot create " + compare_dir + ": " + ec.message()};
            }
            for (std::size_t k = 0; k < requests.size(); ++k) {
                render_to(pano, requests[k], (std::filesystem::path(compare_dir) / entries[k].file).string(), out);
            }
        } else if (*vec_cmd) {
            ProjectionSpec spec;
            if (!vec_spec.empty()) {
                try {
                    spec = parse_key_values(vec_spec);
                    spec.validate();
                } catch (const Error& e) {
                    throw UsageError{"--spec: " + std::string(e.what())};
                }
            } else {
                if (vec_view.projection.empty() || vec_view.fov_deg <= 0.0) {
                    throw UsageError{"vectors needs --spec, or --projection and --fov"};
                }
                spec = make_spec(vec_view, vec_aspect);
            }
            std::vector<TestVector> records;
            try {
                records = export_test_vectors(spec, vec_n);
            } catch (const Error& e) {
                throw StageError{"vectors", e.what()};
            }
            std::ofstream file(vec_output, std::ios::binary);
            if (!file) {
                throw StageError{"write", "cannot open " + vec_output};
            }
            write_test_vectors(file, spec, records);
            if (!file) {
                throw StageError{"write", "failed writing " + vec_output};
            }
            out << "wrote " << records.size() << " records to " << vec_output << "\n";
        } else if (*info_cmd) {
            print_info(out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << "\n";
        return kExitUsage;
    } catch (const StageError& e) {
        err << "error [" << e.stage << "]: " << e.message << "\n";
        return kExitProcessing;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitProcessing;
    }
    return kExitOk;
}

}  // namespace spherewarp::cli
