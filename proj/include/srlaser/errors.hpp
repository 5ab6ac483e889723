#pragma once
#include <stdexcept>
#include <string>

namespace srl {

// error taxonomy -> process exit codes (see cli.cpp)
//   config_error  : bad user input / config file          -> exit 2
//   solver_error  : numerical routine failed to converge  -> exit 3
//   physics_error : request outside the model's validity  -> exit 4

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct physics_error : std::runtime_error {
    explicit physics_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace srl
