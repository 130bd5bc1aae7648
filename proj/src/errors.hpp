#ifndef MESHMON_ERRORS_HPP
#define MESHMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meshmon {

// All domain errors derive from Error so the C boundary can map them to codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class NotFound : public Error {
public:
    explicit NotFound(const std::string& what) : Error(what) {}
};

// Inference asked to condition on evidence whose prior probability is zero.
class InconsistentEvidence : public Error {
public:
    explicit InconsistentEvidence(const std::string& what) : Error(what) {}
};

// A path group with no paths cannot be turned into a delivery network.
class ZeroPathGroup : public Error {
public:
    explicit ZeroPathGroup(const std::string& what) : Error(what) {}
};

// CIR with no energy; power delay profile undefined.
class DegenerateChannel : public Error {
public:
    explicit DegenerateChannel(const std::string& what) : Error(what) {}
};

// An observation fed to the detector does not cover every profiled source.
class IncompleteObservation : public Error {
public:
    explicit IncompleteObservation(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace meshmon

#endif
