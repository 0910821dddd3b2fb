#include "commands.hpp"

#include <fmt/format.h>

#include <exception>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Fractional Kuramoto-Sivashinsky laboratory"};
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, fks::cli::Action>> actions;
    auto add = [&](fks::cli::Action (*reg)(CLI::App&)) {
        const auto before = app.get_subcommands({}).size();
        auto action = reg(app);
        actions.emplace_back(app.get_subcommands({})[before], std::move(action));
    };
    add(fks::cli::register_run);
    add(fks::cli::register_sweep);
    add(fks::cli::register_diagnose);
    add(fks::cli::register_theory);
    add(fks::cli::register_oracle_check);
    add(fks::cli::register_info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fks::cli::kConfigError;
    }

    for (auto& [sub, action] : actions) {
        if (!sub->parsed()) continue;
        try {
            return action();
        } catch (const std::exception& e) {
            fmt::print(stderr, "fks {}: {}\n", sub->get_name(), e.what());
            return fks::cli::kConfigError;
        }
    }
    return fks::cli::kConfigError;
}
