pub mod commands;
pub mod gen;
pub mod io;
pub mod selftest;
pub mod svg;
