package com.kikkoapps.parkingcheapsg.free;

class VehicleBridge {
  int p0 = read(VENDOR_ODOMETER_ESTIMATE_62);
  // again: 557843017
  int p1 = read(0x21400263);
  int p2 = read(VENDOR_MIRROR_FOLD_35);
  int p3 = read(0x214002DF);
  int p4 = read(VENDOR_MIRROR_FOLD_31);
  int p5 = read(0x214002a4);
  // again: 557843108
  int p6 = read(VENDOR_DISPLAY_THEME_30);
  int p7 = read(0x2140029b);
  int p8 = read(VENDOR_SEAT_BELT_REMINDER_25);
  int p9 = read(0x214001E2);
  int p10 = read(VENDOR_EV_CHARGE_PORT_49);
  // again: 557842859
  int p11 = read(0x21400018);
  int p12 = read(VENDOR_TPMS_PRESSURE_68);
  int p13 = read(0x21400268);
  int p14 = read(VENDOR_NOTIFICATION_CHIME_113);
  int p15 = read(0x214001FE);
  // again: 557842942
  int p16 = read(VENDOR_DISPLAY_THEME_10);
  int p17 = read(0x214001b6);
  int p18 = read(VENDOR_BATTERY_LEVEL_48);
  int p19 = read(0x214002ab);
  int p20 = read(VENDOR_LANGUAGE_SETTING_39);
  // again: 557842471
  int p21 = read(0x214000B3);
  int p22 = read(VENDOR_ENGINE_RPM_97);
  int p23 = read(0x214002e1);
  int p24 = read(VENDOR_LANGUAGE_SETTING_55);
  int p25 = read(0x21400296);
  // again: 557843094
  int p26 = read(VENDOR_ODOMETER_ESTIMATE_14);
  int p27 = read(0x21400159);
  int p28 = read(VENDOR_EV_CHARGE_PORT_69);
  int p29 = read(0x2140024b);
  int p30 = read(VENDOR_PARKING_BRAKE_179);
  // again: 557842793
  int p31 = read(0x21400136);
  int p32 = read(VENDOR_EV_CHARGE_PORT_117);
  int p33 = read(0x21400235);
  int p34 = read(VENDOR_SEAT_HEATER_49);
  int p35 = read(0x2140027c);
  // again: 557843068
  int p36 = read(VENDOR_OIL_LIFE_51);
  int p37 = read(0x21400266);
  int p38 = read(VENDOR_FUEL_RANGE_50);
  int p39 = read(0x21400044);
  int p40 = read(VENDOR_USER_PROFILE_76);
  // again: 557842508
  int p41 = read(0x214001e1);
  int p42 = read(VENDOR_NOTIFICATION_CHIME_21);
  int p43 = read(0x214000cc);
  int p44 = read(VENDOR_HVAC_FAN_SPEED_0);
  int p45 = read(0x214000EA);
  // again: 557842666
  String s = "VENDOR_ODOMETER_ESTIMATE_62X";
  long q = 0x214002491;
}
