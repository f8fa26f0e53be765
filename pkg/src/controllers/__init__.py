"""コマンドライン制御"""
from src.controllers.command_controller import CommandController, main

__all__ = ['CommandController', 'main']
