#include "hypquot/errors.hpp"

namespace hypquot {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::self_loop: return "self_loop";
    case ErrorKind::duplicate_edge: return "duplicate_edge";
    case ErrorKind::disconnected: return "disconnected";
    case ErrorKind::invalid_vertex: return "invalid_vertex";
    case ErrorKind::resource: return "resource";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::format: return "format";
    }
    return "unknown";
}

} // namespace hypquot
