#include <string>
#include <vector>

#include "pla/cli.hpp"

int main(int argc, char** argv) {
    return pla::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
