#include <exception>
#include <iostream>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    using namespace bb84sec::cli;
    const std::vector<std::string> args(argv + 1, argv + argc);
    CommandInvocation invocation;
    try {
        invocation = parse_args(args);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        return run_command(invocation, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericFailure;
    }
}
