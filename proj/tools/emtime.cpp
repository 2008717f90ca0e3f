#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>

#include <unistd.h>

#include "emtime/cli.hpp"

int main(int argc, char** argv) {
    try {
        const bool color = std::getenv("CHRONO_NO_COLOR") == nullptr && ::isatty(::fileno(stderr)) != 0;
        return emtime::run_cli({argv + 1, argv + argc}, std::cout, std::cerr, color);
    } catch (const std::exception& e) {
        std::cerr << "emtime: internal error: " << e.what() << '\n';
    } catch (...) {
        std::cerr << "emtime: internal error\n";
    }
    return emtime::exit_internal;
}
