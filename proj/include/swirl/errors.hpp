#ifndef SWIRL_ERRORS_HPP
#define SWIRL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swirl {

/// bad option value, mismatched snapshot fingerprint, impossible parameter combination
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// malformed input data; message carries file/offset/line context where known
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// collection input that contains no records at all
class empty_collection_error : public parse_error {
public:
    using parse_error::parse_error;
};

/// caller broke an API contract (mismatched supports, ids out of range, ...)
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace swirl

#endif // SWIRL_ERRORS_HPP
