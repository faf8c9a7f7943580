#include "gxcalc/error.hpp"

namespace gxcalc {

std::string_view error_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::AllZeroMatrix: return "AllZeroMatrix";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::DegenerateBicharacter: return "DegenerateBicharacter";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::MissingSymbol: return "MissingSymbol";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotFixedPoint: return "NotFixedPoint";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::AdmissibilityError: return "AdmissibilityError";
    case ErrorKind::SectorError: return "SectorError";
    case ErrorKind::NonConfluent: return "NonConfluent";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::MultiplicityUnsupported: return "MultiplicityUnsupported";
    case ErrorKind::InvalidData: return "InvalidData";
    }
    return "Error";
}

}  // namespace gxcalc
