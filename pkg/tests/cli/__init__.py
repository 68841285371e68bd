# -*- coding: utf-8 -*-
"""
命令行界面 (CLI) 相关测试的初始化文件。
(Initialization file for tests related to the Command Line Interface (CLI).)
"""
