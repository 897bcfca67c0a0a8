"""
BanachLab 入口模块
"""

from .cli import app

if __name__ == "__main__":
    app()
