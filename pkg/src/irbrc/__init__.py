"""Lossless intra reference block recompression.

Frames are split into fixed-size blocks.  Each block is predicted sample by
sample from its own already-coded samples, the residuals are coded with
small-value optimized VLC tables, and the result is stored in a slot at a
fixed address so any block can be read back on its own.
"""
from .codec import (Accounting, CodecConfig, CompressedBlock, CompressedFrame, decode_block,
                    decode_frame, decode_plane, encode_block, encode_frame, encode_plane)
from .core import (BlockGeometry, ChromaFormat, Frame, FrameDescriptor, Plane, load_raw_frame,
                   load_raw_frames, read_pgm, tile_plane, write_pgm)
from .framestore import (AccessStats, Container, container_drr, fetch_block, fetch_region,
                         load_frame, store_frame)
from .predictors import (EdgeComponents, NeighborSet, PredictorKind, ResidualBlock, edge_components,
                         predict_block, predict_edge, predict_gap, predict_med, reconstruct_block,
                         select_reference)

__version__ = "0.1.0"

__all__ = [
    "Accounting", "AccessStats", "BlockGeometry", "ChromaFormat", "CodecConfig", "CompressedBlock",
    "CompressedFrame", "Container", "EdgeComponents", "Frame", "FrameDescriptor", "NeighborSet",
    "Plane", "PredictorKind", "ResidualBlock", "container_drr", "decode_block", "decode_frame",
    "decode_plane", "edge_components", "encode_block", "encode_frame", "encode_plane", "fetch_block",
    "fetch_region", "load_frame", "load_raw_frame", "load_raw_frames", "predict_block",
    "predict_edge", "predict_gap", "predict_med", "read_pgm", "reconstruct_block",
    "select_reference", "store_frame", "tile_plane", "write_pgm",
]
