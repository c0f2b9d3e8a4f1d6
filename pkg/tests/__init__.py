"""
GreenEdge - Test Suite

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""
