//! Binary edge-list ingestion, degree computation and graph generation.

mod degrees;
mod generator;
mod stream;

pub use degrees::{compute_degrees, DegreeTable};
pub use generator::{generate_edges, generate_power_law, sample_degrees, GeneratorConfig};
pub use stream::{
    open_stream, read_u32_file, write_edges, write_u32_file, Edge, EdgeReader, EdgeStream,
    VertexId, EDGE_RECORD_BYTES,
};
