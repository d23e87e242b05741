"""Integer algebra for orbit and Mackey categories of finite groups."""

__version__ = "0.1.0"
