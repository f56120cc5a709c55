#include <iostream>

#include "CLI11.hpp"

#include "invpt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Invariant points of convex bodies: computation, equivariance tests, and suspension checks"};
    app.require_subcommand(1);

    invpt::RunConfig config;
    double tol = 0.0;
    std::string mode;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "Global seed (default 0)");
        sub->add_option("--out", config.out, "Write the result here instead of stdout");
        sub->add_option("--tol", tol, "Pass tolerance")->check(CLI::PositiveNumber);
    };

    CLI::App* compute = app.add_subcommand("compute", "Evaluate a functional on a body");
    compute->add_option("--body", config.body, "Body JSON file")->required();
    compute->add_option("--functional", config.functional, "centroid | mvee | blend")->default_str("centroid");
    compute->add_option("--spec", config.spec, "Blend spec JSON (for --functional blend)");
    compute->add_option("--mode", mode, "soft | hard, overrides the spec");
    common(compute);

    CLI::App* equiv = app.add_subcommand("test-equivariance", "Residual battery over random maps");
    equiv->add_option("--body", config.body, "Body JSON file");
    equiv->add_option("--bodies", config.bodies, "Directory of body JSON files");
    equiv->add_option("--functional", config.functional, "centroid | mvee | blend")->default_str("centroid");
    equiv->add_option("--spec", config.spec, "Blend spec JSON (for --functional blend)");
    equiv->add_option("--maps", config.maps, "Number of random maps")->default_val(20);
    equiv->add_option("--mode", mode, "soft | hard, overrides the spec");
    common(equiv);

    CLI::App* susp = app.add_subcommand("suspend", "Build the suspension of a base body");
    susp->add_option("--base", config.base, "Base body JSON file");
    susp->add_option("--profile", config.profile, "Generate an asymmetric base with this many vertices");
    susp->add_option("--plot", config.plot, "Polyline CSV of the base and slices (2D bases)");
    common(susp);

    CLI::App* blend = app.add_subcommand("blend", "Evaluate a blended functional");
    blend->add_option("--spec", config.spec, "Blend spec JSON")->required();
    blend->add_option("--body", config.body, "Body JSON file")->required();
    blend->add_option("--mode", mode, "soft | hard, overrides the spec");
    common(blend);

    CLI::App* verify = app.add_subcommand("verify-suspension", "Check the fixed-slice clauses on a suspension");
    verify->add_option("--base", config.base, "Base body JSON file");
    verify->add_option("--profile", config.profile, "Generate an asymmetric base with this many vertices");
    verify->add_option("--grid", config.grid, "Grid points per axis in the base")->default_val(5);
    verify->add_option("--functional", config.functional, "Comma-separated list of centroid, mvee")
        ->default_str("centroid,mvee");
    verify->add_option("--plot", config.plot, "Polyline CSV of the base and slices (2D bases)");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? invpt::kPass : invpt::kInputError;
    }

    for (CLI::App* sub : app.get_subcommands()) {
        config.command = sub->get_name();
        if (const CLI::Option* o = sub->get_option_no_throw("--tol"); o && o->count() > 0) config.tol = tol;
        if (const CLI::Option* o = sub->get_option_no_throw("--mode"); o && o->count() > 0) config.mode = mode;
    }
    return invpt::run(config, std::cout, std::cerr);
}
