#include <string>
#include <vector>

#include "sgact/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sgact::cli::run(args);
}
