//! Command-line frontend and HTTP game service for Grim.

pub mod commands;
pub mod server;
pub mod view;
