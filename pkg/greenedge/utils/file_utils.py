"""
File Utilities - Load and save YAML documents and text artifacts.

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder. This software
is provided "as is" without warranty of any kind.
"""

from pathlib import Path
from typing import Any, Optional, Union

import yaml


def _comment_block(header: Optional[str]) -> str:
    if not header:
        return ""
    return "".join(f"# {line}".rstrip() + "\n" for line in header.splitlines())


def dump_yaml(data: Any, header: Optional[str] = None, flow_style: Optional[bool] = None) -> str:
    """
    Render data as a YAML document.

    Mapping order is preserved and floats keep full repr precision so
    documents round-trip exactly.

    Args:
        data: The data to render
        header: Optional text emitted as a leading comment block
        flow_style: PyYAML default_flow_style (None renders scalar-only
            collections inline)

    Returns:
        YAML text
    """
    body = yaml.safe_dump(
        data,
        sort_keys=False,
        default_flow_style=flow_style,
        allow_unicode=True,
        width=100,
    )
    return _comment_block(header) + body


def load_yaml(path: Union[str, Path]) -> Any:
    """
    Load a YAML document from a file.

    Args:
        path: Path to the document

    Returns:
        Parsed content

    Raises:
        FileNotFoundError: If file doesn't exist
        ValueError: If the file is not valid YAML
    """
    path = Path(path)

    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        try:
            return yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(str(e)) from e


def save_yaml(
    data: Any,
    path: Union[str, Path],
    header: Optional[str] = None,
    flow_style: Optional[bool] = None,
) -> None:
    """
    Save data as a YAML document.

    Args:
        data: The data to write
        path: Output file path
        header: Optional text emitted as a leading comment block
    """
    save_text(dump_yaml(data, header=header, flow_style=flow_style), path)


def save_text(text: str, path: Union[str, Path], overwrite: bool = True) -> None:
    """
    Save text to a file.

    Args:
        text: The content
        path: Output file path
        overwrite: Whether to overwrite existing files
    """
    path = Path(path)

    if path.exists() and not overwrite:
        raise FileExistsError(f"File already exists: {path}")

    # Create parent directories if needed
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def ensure_directory(path: Union[str, Path]) -> Path:
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        path: Directory path

    Returns:
        Path object for the directory
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path
