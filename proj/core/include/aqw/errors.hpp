#pragma once

#include <stdexcept>
#include <string>

namespace aqw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AQW_DEFINE_ERROR(Name)                  \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

// walker
AQW_DEFINE_ERROR(PositionOutOfLattice);
AQW_DEFINE_ERROR(BoundarySpill);
AQW_DEFINE_ERROR(LatticeMismatch);

// entanglement
AQW_DEFINE_ERROR(SupportTooSmall);
AQW_DEFINE_ERROR(BadSubsystemSet);
AQW_DEFINE_ERROR(NumericalInstability);

// protocol / security
AQW_DEFINE_ERROR(ConfigError);
AQW_DEFINE_ERROR(MessageOutOfRange);
AQW_DEFINE_ERROR(TamperDetected);

// wire
AQW_DEFINE_ERROR(ParseError);
AQW_DEFINE_ERROR(VersionError);
AQW_DEFINE_ERROR(NormError);
AQW_DEFINE_ERROR(ChannelError);
AQW_DEFINE_ERROR(ProtocolError);

#undef AQW_DEFINE_ERROR

}  // namespace aqw
