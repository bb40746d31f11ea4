#![no_std]

extern crate alloc;

pub mod brute;
pub mod dp;
pub mod generators;
pub mod graph;
pub mod ip;
pub mod orientation;
pub mod planar;
pub mod propagation;
pub mod treewidth;
