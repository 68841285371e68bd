# -*- coding: utf-8 -*-
"""
服务层模块测试的初始化文件。
(Initialization file for tests of service layer modules.)
"""
