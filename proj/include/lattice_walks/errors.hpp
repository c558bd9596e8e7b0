#pragma once

#include <stdexcept>
#include <string>

namespace lattice_walks {

// Invalid user input: malformed graphs, out-of-range vertices, parameter
// combinations the model does not define.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but exceeds what this implementation computes
// exactly (state-space caps, exact-search caps, unsupported variants).
class capability_error : public std::runtime_error {
public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified numeric enclosure is too wide to decide a sign that flips the
// verdict; the caller must supply higher precision, not a guess.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal contract violation of the model (e.g. zero total rate at a state
// that should be reachable).
class model_error : public std::logic_error {
public:
    explicit model_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace lattice_walks
