//! Holds the `acceptance` test target, which prints one line per criterion.
