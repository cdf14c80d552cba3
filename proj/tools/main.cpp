#include "birk_cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"weighted Birkhoff averaging toolkit"};
    birk::cli::JobConfig cfg;
    birk::cli::build_app(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return birk::cli::run_job(cfg);
}
