"""
GreenEdge Utilities

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

from .file_utils import dump_yaml, ensure_directory, load_yaml, save_text, save_yaml

__all__ = ["dump_yaml", "ensure_directory", "load_yaml", "save_text", "save_yaml"]
