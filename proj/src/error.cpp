#include "qcap/error.hpp"

namespace qcap {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Domain: return "DomainError";
        case ErrorCode::InvalidChannel: return "InvalidChannel";
        case ErrorCode::NoPreimage: return "NoPreimage";
        case ErrorCode::NotReachable: return "NotReachable";
        case ErrorCode::NotDiagonal: return "NotDiagonal";
        case ErrorCode::NotUnital: return "NotUnital";
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::DegenerateChannel: return "DegenerateChannel";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::EndpointPure: return "EndpointPure";
        case ErrorCode::NotInHull: return "NotInHull";
        case ErrorCode::MaxItersExceeded: return "MaxItersExceeded";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

}  // namespace qcap
