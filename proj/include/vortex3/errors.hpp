#ifndef VORTEX3_ERRORS_HPP
#define VORTEX3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vortex3 {

//! Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Two vortex positions coincide exactly.
class CollisionError : public Error {
public:
    using Error::Error;
};

//! A value lies outside the domain of the requested operation.
class DomainError : public Error {
public:
    using Error::Error;
};

//! A shape-space field was requested on a collinear configuration.
class BoundaryError : public Error {
public:
    using Error::Error;
};

//! Some squared distance b_i vanishes (or is negative) while the others do not.
class BinaryCollisionError : public Error {
public:
    using Error::Error;
};

//! The configuration is equilateral, where the angular coordinate is undefined.
class EquilateralError : public Error {
public:
    using Error::Error;
};

//! All circulations share a sign, so no collision region exists.
class SignConventionError : public Error {
public:
    using Error::Error;
};

//! The orbit curve degenerates into rays when gamma vanishes.
class GammaZeroError : public Error {
public:
    using Error::Error;
};

//! A ray slope lies outside the boundary rays of the M = 0 region.
class OutOfRegionError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

} // namespace vortex3

#endif // VORTEX3_ERRORS_HPP
