package com.crosschasm.evchargerlocator;

class VehicleBridge {
  int p0 = read(VENDOR_SEAT_HEATER_29);
  // again: 557843120
  int p1 = read(0x21400035);
  int p2 = read(VENDOR_CLIMATE_TEMPERATURE_34);
  int p3 = read(0x21400168);
  int p4 = read(VENDOR_EV_CHARGE_PORT_117);
  int p5 = read(0x2140002d);
  // again: 557842477
  int p6 = read(VENDOR_CLIMATE_TEMPERATURE_78);
  int p7 = read(0x21400192);
  int p8 = read(VENDOR_EV_CHARGE_PORT_69);
  int p9 = read(0x21400208);
  int p10 = read(VENDOR_LANE_KEEP_ASSIST_156);
  // again: 557842770
  int p11 = read(0x2140014e);
  int p12 = read(VENDOR_SEAT_BELT_REMINDER_185);
  int p13 = read(0x2140026c);
  int p14 = read(VENDOR_DTC_FAULT_27);
  int p15 = read(0x21400137);
  // again: 557842743
  int p16 = read(VENDOR_SEAT_HEATER_73);
  int p17 = read(0x21400293);
  int p18 = read(VENDOR_NOTIFICATION_CHIME_29);
  int p19 = read(0x2140011d);
  int p20 = read(VENDOR_OIL_LIFE_43);
  // again: 557842853
  int p21 = read(0x21400194);
  int p22 = read(VENDOR_TPMS_PRESSURE_4);
  int p23 = read(0x21400280);
  int p24 = read(VENDOR_OIL_LIFE_103);
  int p25 = read(0x2140018f);
  // again: 557842831
  int p26 = read(VENDOR_USER_PROFILE_0);
  int p27 = read(0x21400029);
  int p28 = read(VENDOR_MIRROR_FOLD_27);
  int p29 = read(0x214000b8);
  int p30 = read(VENDOR_PARKING_BRAKE_163);
  // again: 557842777
  int p31 = read(0x2140013d);
  int p32 = read(VENDOR_BATTERY_LEVEL_92);
  int p33 = read(0x21400052);
  int p34 = read(VENDOR_DTC_FAULT_19);
  int p35 = read(0x21400255);
  // again: 557843029
  int p36 = read(VENDOR_MIRROR_FOLD_51);
  int p37 = read(0x214000ce);
  int p38 = read(VENDOR_FUEL_RANGE_94);
  int p39 = read(0x2140002C);
  int p40 = read(VENDOR_USER_PROFILE_160);
  // again: 557842592
  int p41 = read(0x21400256);
  int p42 = read(VENDOR_ODOMETER_ESTIMATE_102);
  int p43 = read(0x214002b4);
  int p44 = read(VENDOR_CRUISE_CONTROL_154);
  int p45 = read(0x21400012);
  // again: 557842450
  String s = "VENDOR_SEAT_HEATER_29X";
  long q = 0x214002b01;
}
