pub mod additional_length;
pub mod cli;
pub mod complex_x;
pub mod element;
pub mod error;
pub mod normal_form;
pub mod projection;
pub mod report;
pub mod rigidity;
pub mod sample;
pub mod structure;
pub mod structures;
pub mod word;
